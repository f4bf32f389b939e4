// include/sdsv/thread-pool.h

// Copyright 2026  SDSV Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SDSV_THREAD_POOL_H_
#define SDSV_THREAD_POOL_H_

#include <cstdint>
#include <functional>

namespace sdsv {

// Worker count used by ParallelFor; the CLI --jobs flag sets it.
int NumJobs();
void SetNumJobs(int n);

// Runs fn(i) for every i in [0, n), on up to NumJobs() threads.  fn must
// write only to its own slot i of any shared output; callers then reduce
// slots in index order, so results never depend on the thread count.
// The first exception thrown by any fn is rethrown on the calling thread.
void ParallelFor(int64_t n, const std::function<void(int64_t)> &fn);

}  // namespace sdsv

#endif  // SDSV_THREAD_POOL_H_
