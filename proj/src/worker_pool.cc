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

#include "pdstree/worker_pool.h"

namespace pdstree {

WorkerPool::WorkerPool(int num_threads) {
  for (int i = 0; i < num_threads; ++i) {
    threads_.emplace_back([this] { WorkerLoop(); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stopping_ = true;
  }
  work_ready_.notify_all();
  for (auto& thread : threads_) thread.join();
}

void WorkerPool::Run(int num_tasks, const std::function<void(int)>& task) {
  if (num_tasks <= 0) return;
  if (threads_.empty()) {
    for (int i = 0; i < num_tasks; ++i) task(i);
    return;
  }
  std::unique_lock<std::mutex> lock(mutex_);
  task_ = &task;
  num_tasks_ = num_tasks;
  next_task_ = 0;
  error_ = nullptr;
  ++generation_;
  work_ready_.notify_all();
  work_done_.wait(lock, [this] { return next_task_ >= num_tasks_ && running_ == 0; });
  task_ = nullptr;
  if (error_) std::rethrow_exception(error_);
}

void WorkerPool::WorkerLoop() {
  long seen_generation = 0;
  std::unique_lock<std::mutex> lock(mutex_);
  while (true) {
    work_ready_.wait(lock, [&] {
      return stopping_ || (generation_ != seen_generation && next_task_ < num_tasks_);
    });
    if (stopping_) return;
    while (next_task_ < num_tasks_) {
      const int index = next_task_++;
      ++running_;
      lock.unlock();
      try {
        (*task_)(index);
      } catch (...) {
        lock.lock();
        if (!error_) error_ = std::current_exception();
        --running_;
        continue;
      }
      lock.lock();
      --running_;
    }
    seen_generation = generation_;
    work_done_.notify_all();
  }
}

}  // namespace pdstree
