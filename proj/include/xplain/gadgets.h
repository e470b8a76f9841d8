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

#ifndef XPLAIN_GADGETS_H_
#define XPLAIN_GADGETS_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "xplain/model.h"

namespace xplain {

// Subset sum: does some subset of z sum to target?
struct SspInstance {
  std::vector<int64_t> z;
  int64_t target = 1;
};

// Subset sum with a cardinality k.
struct KSspInstance {
  std::vector<int64_t> z;
  int k = 0;
  int64_t target = 1;
};

// Exists x over u such that no y over v reaches the target.
struct GsspInstance {
  std::vector<int64_t> u;
  std::vector<int64_t> v;
  int64_t target = 1;
};

// As GSSP with |x| = k.
struct KGsspInstance {
  std::vector<int64_t> u;
  std::vector<int64_t> v;
  int k = 0;
  int64_t target = 1;
};

// Exists S within `allowed` with |S| = k such that no S' in the complement
// of S gives sum(S) + sum(S') = target.
struct KGsspStarInstance {
  std::vector<int64_t> z;
  FeatureSubset allowed;
  int k = 0;
  int64_t target = 1;
};

// Vertices carry a color in [0, colors); edges are undirected.
struct ColoredGraph {
  int colors = 0;
  std::vector<int> color_of;
  std::vector<std::pair<int, int>> edges;
};

struct CsrGadget {
  Ensemble ensemble;
  BooleanInstance x;
  FeatureSubset subset;
};

struct BoundGadget {
  Ensemble ensemble;
  BooleanInstance x;
  int bound = 0;
};

// Each Check* raises kInvalidInstance on a malformed instance.
void CheckInstance(const SspInstance& instance);
void CheckInstance(const KSspInstance& instance);
void CheckInstance(const GsspInstance& instance);
void CheckInstance(const KGsspInstance& instance);
void CheckInstance(const KGsspStarInstance& instance);

// Two perceptrons <-z, T - 1/2> and <z, -T - 1/2> under majority; the
// ensemble is 0 exactly where the selected weights sum to T. Uses x = 0^n
// and S = {}: S is sufficient iff no subset reaches T.
CsrGadget SspCsrGadget(const SspInstance& instance);

// Same pair of perceptrons with bound k: a contrastive set of size <= k
// exists iff some subset of at most k elements reaches T.
BoundGadget KSspMcrGadget(const KSspInstance& instance);

// Five perceptrons at x = 1^n whose minimum sufficient reason has size <= k
// iff the instance is a yes-instance (reading the complement condition over
// proper subsets, see SolveKGsspStarBrute). When sum(z) = T every member is
// constant True.
BoundGadget KGsspStarMsrGadget(const KGsspStarInstance& instance);

// Instance rewrites of the chain GSSP -> k-GSSP -> k-GSSP*.
KGsspInstance GsspToKGssp(const GsspInstance& instance);
KGsspStarInstance KGsspToKGsspStar(const KGsspInstance& instance);

// Padding size per color class: the smallest power of two >= 2 holding the
// largest class.
int CliqueClassSize(const ColoredGraph& graph);

// One complete tree per color pair, testing both vertex codes, labelled by
// adjacency; plus as many constant-0 trees. S = {} is not sufficient at the
// returned x iff the graph has a multicolored clique.
CsrGadget MulticoloredCliqueCsrGadget(const ColoredGraph& graph);

// Exhaustive reference solvers.
bool SolveSspBrute(const SspInstance& instance);
// With `at_most`, subsets of size <= k count; otherwise exactly k.
bool SolveKSspBrute(const KSspInstance& instance, bool at_most = false);
bool SolveGsspBrute(const GsspInstance& instance);
bool SolveKGsspBrute(const KGsspInstance& instance);
// With `proper_complement_only`, S' ranges over proper subsets of the
// complement of S; the two readings differ only when sum(z) = T.
bool SolveKGsspStarBrute(const KGsspStarInstance& instance,
                         bool proper_complement_only = false);
bool SolveMulticoloredCliqueBrute(const ColoredGraph& graph);

}  // namespace xplain

#endif  // XPLAIN_GADGETS_H_
