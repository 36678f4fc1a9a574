/*
 * Copyright 2026 The pdstree Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Python bindings for the pdstree core.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "pdstree/bench.h"
#include "pdstree/datagen.h"
#include "pdstree/engine.h"
#include "pdstree/error.h"
#include "pdstree/histogram.h"
#include "pdstree/schema.h"
#include "pdstree/split.h"
#include "pdstree/stream.h"
#include "pdstree/tree.h"

namespace py = pybind11;

namespace pdstree {
namespace {

std::vector<Instance> Collect(StreamSource& stream) {
  std::vector<Instance> out;
  while (auto inst = stream.Next()) out.push_back(std::move(*inst));
  return out;
}

py::dict TrainResultDict(const TrainResult& result) {
  py::list splits;
  for (const auto& s : result.split_log) {
    splits.append(py::make_tuple(s.round, s.leaf, s.test.ToString()));
  }
  py::dict out;
  out["tree"] = result.tree;
  out["rounds"] = result.rounds.size();
  out["evaluations"] = result.evaluations;
  out["consumed"] = result.consumed;
  out["splits"] = splits;
  out["prequential_correct"] = result.prequential_correct;
  out["prequential_total"] = result.prequential_total;
  return out;
}

}  // namespace
}  // namespace pdstree

PYBIND11_MODULE(_core, m) {
  using namespace pdstree;
  m.doc() = "Parallel single-pass streaming CART";

  static py::exception<Error> error_type(m, "PdstreeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      exc.attr("line") = e.line();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Schema>(m, "Schema")
      .def_property_readonly("attribute_names",
                             [](const Schema& s) {
                               std::vector<std::string> names;
                               for (const auto& a : s.attributes) names.push_back(a.name);
                               return names;
                             })
      .def_property_readonly("numeric",
                             [](const Schema& s) {
                               std::vector<bool> flags;
                               for (const auto& a : s.attributes) flags.push_back(a.is_numeric());
                               return flags;
                             })
      .def_readonly("classes", &Schema::classes)
      .def("__str__", &FormatSchema)
      .def(py::self == py::self);
  m.def("parse_schema", &ParseSchema, py::arg("text"));

  py::class_<Instance>(m, "Instance")
      .def(py::init<std::vector<double>, int>(), py::arg("values"), py::arg("label"))
      .def_readwrite("values", &Instance::values)
      .def_readwrite("label", &Instance::label)
      .def(py::self == py::self)
      .def("__repr__", [](const Instance& i) {
        return "Instance(" + py::repr(py::cast(i.values)).cast<std::string>() + ", " +
               std::to_string(i.label) + ")";
      });
  m.def("parse_instance", [](const std::string& line, const Schema& s) {
    return ParseInstance(line, s);
  });
  m.def("format_instance", &FormatInstance);

  py::class_<StreamingHistogram>(m, "StreamingHistogram")
      .def(py::init<int>(), py::arg("max_bins") = 10)
      .def_static("from_bins",
                  [](int max_bins, const std::vector<std::pair<double, double>>& bins) {
                    std::vector<Bin> out;
                    for (const auto& [p, c] : bins) out.push_back({p, c});
                    return StreamingHistogram::FromBins(max_bins, std::move(out));
                  })
      .def("update", &StreamingHistogram::Update)
      .def("merge", &StreamingHistogram::Merge)
      .def("sum", &StreamingHistogram::Sum)
      .def("uniform", &StreamingHistogram::Uniform)
      .def_property_readonly("bins",
                             [](const StreamingHistogram& h) {
                               std::vector<std::pair<double, double>> out;
                               for (const Bin& b : h.bins()) out.emplace_back(b.centroid, b.count);
                               return out;
                             })
      .def_property_readonly("total", &StreamingHistogram::total)
      .def_property_readonly("max_bins", &StreamingHistogram::max_bins)
      .def("serialize", &StreamingHistogram::Serialize)
      .def_static("parse", &StreamingHistogram::Parse)
      .def("__len__", &StreamingHistogram::size)
      .def(py::self == py::self);

  m.def("gini", [](const std::vector<double>& c) { return Gini(c); });
  m.def("gini_gain", [](const std::vector<double>& parent, const std::vector<double>& left,
                        const std::vector<double>& right) {
    return GiniGain(parent, left, right);
  });
  m.def("hoeffding_bound", &HoeffdingBound, py::arg("n"), py::arg("delta"));

  py::class_<DecisionTree>(m, "DecisionTree")
      .def(py::init<Schema>())
      .def_property_readonly("schema", &DecisionTree::schema)
      .def("route", &DecisionTree::Route)
      .def("predict", &DecisionTree::Predict)
      .def("apply_split_threshold",
           [](DecisionTree& t, LeafId leaf, int attribute, double threshold) {
             return t.ApplySplit(leaf, SplitTest::Threshold(attribute, threshold));
           })
      .def("apply_split_subset",
           [](DecisionTree& t, LeafId leaf, int attribute, std::vector<int> subset) {
             return t.ApplySplit(leaf, SplitTest::Subset(attribute, std::move(subset)));
           })
      .def("leaf_ids", &DecisionTree::LeafIds)
      .def("metrics",
           [](const DecisionTree& t) {
             const TreeMetrics mt = t.Metrics();
             return py::dict(py::arg("depth") = mt.depth, py::arg("nodes") = mt.node_count,
                             py::arg("leaves") = mt.leaf_count);
           })
      .def("serialize", &DecisionTree::Serialize)
      .def_static("parse", [](const std::string& text, const Schema& s) {
        return DecisionTree::Parse(text, s);
      })
      .def("__eq__", [](const DecisionTree& a, const DecisionTree& b) { return TreesEqual(a, b); });

  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init([](int numeric_attrs, int nominal_attrs, int nominal_domain, int classes,
                       int concept_depth, double noise, uint64_t seed) {
             GeneratorConfig c{numeric_attrs, nominal_attrs, nominal_domain, classes,
                               concept_depth, noise, seed};
             c.Validate();
             return c;
           }),
           py::arg("numeric_attrs") = 5, py::arg("nominal_attrs") = 0,
           py::arg("nominal_domain") = 4, py::arg("classes") = 2, py::arg("concept_depth") = 5,
           py::arg("noise") = 0.15, py::arg("seed") = 1)
      .def_readwrite("numeric_attrs", &GeneratorConfig::numeric_attrs)
      .def_readwrite("nominal_attrs", &GeneratorConfig::nominal_attrs)
      .def_readwrite("classes", &GeneratorConfig::classes)
      .def_readwrite("concept_depth", &GeneratorConfig::concept_depth)
      .def_readwrite("noise", &GeneratorConfig::noise)
      .def_readwrite("seed", &GeneratorConfig::seed);

  py::class_<Concept>(m, "Concept")
      .def_readonly("schema", &Concept::schema)
      .def_readonly("tree", &Concept::tree);
  m.def("generate_concept", &GenerateConcept);
  m.def(
      "generate",
      [](const Concept& target, const GeneratorConfig& config, int64_t count,
         uint64_t stream_id) {
        GeneratedStream stream(target, config, count, stream_id);
        return Collect(stream);
      },
      py::arg("concept"), py::arg("config"), py::arg("count"), py::arg("stream_id") = 0);
  m.def("preset", [](const std::string& name) {
    const Preset p = GetPreset(name);
    return py::make_tuple(p.config, p.records);
  });
  m.def("preset_names", &PresetNames);

  m.def(
      "train",
      [](std::vector<Instance> records, const Schema& schema, int mappers, int64_t batch,
         int bins, double delta, double tau, int64_t n_min, bool prequential) {
        EngineConfig config;
        config.mappers = mappers;
        config.records_per_round = batch;
        config.bins = bins;
        config.split.delta = delta;
        config.split.tau = tau;
        config.split.n_min = n_min;
        config.prequential = prequential;
        VectorStream stream(std::move(records));
        std::optional<TrainResult> result;
        {
          py::gil_scoped_release release;
          result = TrainStream(stream, schema, config);
        }
        return TrainResultDict(*result);
      },
      py::arg("records"), py::arg("schema"), py::arg("mappers") = 1, py::arg("batch") = 100,
      py::arg("bins") = 10, py::arg("delta") = 1e-4, py::arg("tau") = 0.05,
      py::arg("n_min") = 200, py::arg("prequential") = false);

  m.def("evaluate", [](const DecisionTree& tree, std::vector<Instance> records) {
    VectorStream stream(std::move(records));
    return Evaluate(tree, stream).value();
  });
}
