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

#include "qccs/teleport.h"

#include "qccs/corpus.h"
#include "qccs/frontend.h"

namespace qccs {

TeleportResult run_teleport(Complex alpha, Complex beta, double tol) {
    ParseOptions opts;
    opts.param_overrides = {{"alpha", alpha}, {"beta", beta}};
    Elaborated el = elaborate(parse(corpus::teleport(), opts));
    const Configuration &c0 = el.config("Main");

    TeleportResult out;
    out.alpha = alpha;
    out.beta = beta;

    // EPR allocates q1 then q2; Bob ends up holding the second fresh name.
    QContext probe = new_qubit(c0.ctx, fresh_qvar(c0.ctx));
    out.bob_qubit = fresh_qvar(probe);

    Vector psi(2);
    psi << alpha, beta;
    out.expected = outer(psi);

    out.trace = run_trace(c0, el.policy, Scheduler{});
    out.ok = out.trace.final.support.size() == 4;
    const std::string bob[] = {out.bob_qubit};
    for (const auto &[cfg, p] : out.trace.final.support) {
        TeleportBranch b;
        b.probability = p;
        b.process = pretty_print(*cfg.proc);
        b.vars = cfg.ctx.vars();
        b.bob = reduced_state(cfg.ctx, bob);
        b.error = (b.bob - out.expected).cwiseAbs().maxCoeff();
        out.ok = out.ok && std::abs(p - 0.25) <= tol && b.error <= tol;
        out.branches.push_back(std::move(b));
    }
    return out;
}

}  // namespace qccs
