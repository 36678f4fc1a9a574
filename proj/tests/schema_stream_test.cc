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

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "gtest/gtest.h"
#include "pdstree/error.h"
#include "pdstree/schema.h"
#include "pdstree/stream.h"

namespace pdstree {
namespace {

constexpr char kSchemaText[] =
    "attr x numeric\n"
    "attr c nominal a,b\n"
    "classes yes,no\n";

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("pdstree_schema_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
}

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseSchema, Basic) {
  const Schema schema = ParseSchema(kSchemaText);
  ASSERT_EQ(schema.num_attributes(), 2);
  EXPECT_EQ(schema.num_classes(), 2);
  EXPECT_EQ(schema.attributes[0].name, "x");
  EXPECT_TRUE(schema.attributes[0].is_numeric());
  EXPECT_EQ(schema.attributes[1].domain, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(schema.classes, (std::vector<std::string>{"yes", "no"}));
}

TEST(ParseSchema, IgnoresCommentsAndBlankLines) {
  const Schema schema = ParseSchema("# header\n\nattr x numeric\n  \n# c\nclasses p,q\n");
  EXPECT_EQ(schema.num_attributes(), 1);
}

TEST(ParseSchema, Errors) {
  EXPECT_EQ(CodeOf([] { ParseSchema("attr x numeric\nattr x numeric\nclasses a,b\n"); }),
            ErrorCode::kDuplicateName);
  EXPECT_EQ(CodeOf([] { ParseSchema("attr x numeric\nclasses yes\n"); }),
            ErrorCode::kTooFewClasses);
  EXPECT_EQ(CodeOf([] { ParseSchema("attr x numeric\nclasses a,a\n"); }),
            ErrorCode::kDuplicateName);
  EXPECT_EQ(CodeOf([] { ParseSchema("attr x nominal a,a\nclasses a,b\n"); }),
            ErrorCode::kDuplicateName);
  EXPECT_EQ(CodeOf([] { ParseSchema("attr x numeric\n"); }), ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([] { ParseSchema("attr x real\nclasses a,b\n"); }), ErrorCode::kSyntax);
  EXPECT_EQ(CodeOf([] { ParseSchema("classes a,b\nattr x numeric\n"); }), ErrorCode::kSyntax);
}

TEST(ParseSchema, SyntaxErrorCarriesLineNumber) {
  try {
    ParseSchema("attr x numeric\n# fine\nbogus line\nclasses a,b\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntax);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParseSchema, FormatRoundTrip) {
  const Schema schema = ParseSchema(kSchemaText);
  EXPECT_EQ(ParseSchema(FormatSchema(schema)), schema);
}

TEST(ParseInstance, MapsFields) {
  const Schema schema = ParseSchema(kSchemaText);
  const Instance inst = ParseInstance("1.5,a,yes", schema);
  EXPECT_EQ(inst.values, (std::vector<double>{1.5, 0}));
  EXPECT_EQ(inst.label, 0);
  EXPECT_EQ(ParseInstance("-2e3, b ,no", schema).values, (std::vector<double>{-2000, 1}));
}

TEST(ParseInstance, Errors) {
  const Schema schema = ParseSchema(kSchemaText);
  try {
    ParseInstance("1.5,z,yes", schema);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownNominalValue);
    EXPECT_NE(std::string(e.what()).find("z"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([&] { ParseInstance("1.5,a", schema); }), ErrorCode::kFieldCountMismatch);
  EXPECT_EQ(CodeOf([&] { ParseInstance("1.5,a,maybe", schema); }),
            ErrorCode::kUnknownClassLabel);
  EXPECT_EQ(CodeOf([&] { ParseInstance("inf,a,yes", schema); }), ErrorCode::kNonFiniteValue);
  EXPECT_EQ(CodeOf([&] { ParseInstance("nan,a,yes", schema); }), ErrorCode::kNonFiniteValue);
  EXPECT_EQ(CodeOf([&] { ParseInstance(",a,yes", schema); }), ErrorCode::kSyntax);
}

// Round-trip over random valid instances, including awkward doubles.
TEST(ParseInstance, FormatRoundTripProperty) {
  const Schema schema = ParseSchema(
      "attr x numeric\nattr y numeric\nattr c nominal a,b,c,d\nclasses p,q,r\n");
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> wide(-1e300, 1e300);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    Instance inst;
    inst.values = {trial % 3 == 0 ? wide(rng) : unit(rng),
                   trial % 5 == 0 ? 1e-310 * unit(rng) : -unit(rng),
                   static_cast<double>(rng() % 4)};
    inst.label = static_cast<int>(rng() % 3);
    ASSERT_EQ(ParseInstance(FormatInstance(inst, schema), schema), inst);
  }
}

TEST(CsvStream, YieldsEachRecordOnce) {
  const Schema schema = ParseSchema(kSchemaText);
  const std::string path = TempPath("three.csv");
  WriteText(path, "1,a,yes\n2,b,no\n3,a,no\n");
  auto stream = OpenCsvStream(path, schema);
  int count = 0;
  while (stream->Next()) ++count;
  EXPECT_EQ(count, 3);
  EXPECT_EQ(stream->consumed(), 3);
  // A second drain yields nothing.
  EXPECT_FALSE(stream->Next().has_value());
  EXPECT_EQ(stream->consumed(), 3);
  std::filesystem::remove(path);
}

TEST(CsvStream, EmptyFile) {
  const std::string path = TempPath("empty.csv");
  WriteText(path, "");
  auto stream = OpenCsvStream(path, ParseSchema(kSchemaText));
  EXPECT_FALSE(stream->Next().has_value());
  EXPECT_TRUE(stream->exhausted());
  std::filesystem::remove(path);
}

TEST(CsvStream, MalformedRecordReportsItsNumber) {
  const std::string path = TempPath("bad.csv");
  WriteText(path, "1,a,yes\n2,q,no\n3,a,no\n");
  auto stream = OpenCsvStream(path, ParseSchema(kSchemaText));
  ASSERT_TRUE(stream->Next().has_value());
  try {
    stream->Next();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownNominalValue);
    EXPECT_EQ(e.line(), 2);
  }
  std::filesystem::remove(path);
}

TEST(CsvStream, MissingFile) {
  EXPECT_EQ(CodeOf([] { OpenCsvStream("/nonexistent/x.csv", ParseSchema(kSchemaText)); }),
            ErrorCode::kIo);
}

TEST(VectorStream, SingleYield) {
  std::vector<Instance> data(5, Instance{{1.0, 0}, 0});
  VectorStream stream(data);
  int drained = 0;
  while (stream.Next()) ++drained;
  EXPECT_EQ(drained, 5);
  EXPECT_FALSE(stream.Next().has_value());
  EXPECT_EQ(stream.consumed(), 5);
}

TEST(ValidateInstance, RejectsMismatch) {
  const Schema schema = ParseSchema(kSchemaText);
  EXPECT_NO_THROW(ValidateInstance({{0.5, 1}, 1}, schema));
  EXPECT_EQ(CodeOf([&] { ValidateInstance({{0.5}, 1}, schema); }), ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { ValidateInstance({{0.5, 2}, 1}, schema); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { ValidateInstance({{0.5, 0.5}, 1}, schema); }),
            ErrorCode::kSchemaMismatch);
  EXPECT_EQ(CodeOf([&] { ValidateInstance({{0.5, 0}, 2}, schema); }),
            ErrorCode::kSchemaMismatch);
}

}  // namespace
}  // namespace pdstree
