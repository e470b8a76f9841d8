// Copyright 2026 The Xplain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XPLAIN_REASON_H_
#define XPLAIN_REASON_H_

#include "xplain/model.h"

namespace xplain {

// A cardinality-minimal reason and the lexicographically-first set attaining
// it (unless a routine documents another tie-break).
struct Reason {
  int size = 0;
  FeatureSubset witness;

  friend bool operator==(const Reason&, const Reason&) = default;
};

}  // namespace xplain

#endif  // XPLAIN_REASON_H_
