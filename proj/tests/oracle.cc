// Copyright 2026 The qccs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracle.h"

#include <cmath>
#include <functional>
#include <map>

namespace qccs::testing {

// Enumerate every equivalence on a small LTS and keep those that are strong
// probabilistic bisimulations. Probabilities are multiples of 1/4, so class
// vectors scaled by 4 are integers, and nodes have at most two successors per
// action, so hull membership is an exact segment test.

namespace {

using IVec = std::vector<long long>;

bool on_segment(const IVec &a, const IVec &b, const IVec &t) {
    // t = a + l (b - a), 0 <= l <= 1, with l = num/den.
    long long num = 0, den = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (b[i] != a[i]) {
            num = t[i] - a[i];
            den = b[i] - a[i];
            break;
        }
    }
    if (den == 0) return a == t;
    if (den < 0) num = -num, den = -den;
    if (num < 0 || num > den) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if ((t[i] - a[i]) * den != num * (b[i] - a[i])) return false;
    }
    return true;
}

IVec scaled_class(const LtsEdge &e, const std::vector<int> &block, int nblocks) {
    IVec v(nblocks, 0);
    for (const auto &[n, p] : e.targets) v[block[n]] += std::llround(p * 4);
    return v;
}

bool is_bisimulation(const ProbLts &lts, const std::vector<int> &block, int nblocks) {
    int n = lts.size();
    for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
            if (c == d || block[c] != block[d]) continue;
            if (lts.stuck(c) && (!lts.stuck(d) || lts.stuck_class[c] != lts.stuck_class[d])) return false;
            for (const auto &e : lts.edges[c]) {
                IVec t = scaled_class(e, block, nblocks);
                std::vector<IVec> pts;
                for (const auto &f : lts.edges[d]) {
                    if (f.action == e.action) pts.push_back(scaled_class(f, block, nblocks));
                }
                bool ok = false;
                for (size_t i = 0; i < pts.size() && !ok; ++i) {
                    for (size_t j = i; j < pts.size() && !ok; ++j) ok = on_segment(pts[i], pts[j], t);
                }
                if (!ok) return false;
            }
        }
    }
    return true;
}

void for_each_partition(int n, const std::function<void(const std::vector<int> &, int)> &f) {
    std::vector<int> block(n, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == n) return f(block, used);
        for (int b = 0; b <= used && b < n; ++b) {
            block[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
}

}  // namespace

ProbLts random_small_lts(std::mt19937_64 &rng) {
    auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const Action actions[] = {Action::tau(), Action::cout("a", 0)};
    ProbLts lts;
    int n = ri(2, 6);
    lts.edges.resize(n);
    lts.stuck_class.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (ri(0, 4) == 0) continue;  // stuck
        for (const auto &a : actions) {
            int k = ri(0, 2);
            for (int e = 0; e < k; ++e) {
                // Split four quarters over random targets.
                std::map<int, double> t;
                for (int q = 0; q < 4; ++q) t[ri(0, n - 1)] += 0.25;
                lts.edges[i].push_back({a, {t.begin(), t.end()}});
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (lts.edges[i].empty()) lts.stuck_class[i] = ri(0, 1);
    }
    return lts;
}


std::vector<std::vector<bool>> brute_force_bisimilar(const ProbLts &lts) {
    int n = lts.size();
    std::vector<std::vector<bool>> related(n, std::vector<bool>(n, false));
    for_each_partition(n, [&](const std::vector<int> &block, int nb) {
        if (!is_bisimulation(lts, block, nb)) return;
        for (int c = 0; c < n; ++c) {
            for (int d = 0; d < n; ++d) {
                if (block[c] == block[d]) related[c][d] = true;
            }
        }
    });
    return related;
}

}  // namespace qccs::testing
