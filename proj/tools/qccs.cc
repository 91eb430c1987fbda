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

// qccs: command-line front end.
//
// Exit codes: 0 success / equivalent, 1 failed check / distinguished,
// 2 usage, input or internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qccs/bisim.h"
#include "qccs/frontend.h"
#include "qccs/laws.h"
#include "qccs/serialize.h"
#include "qccs/teleport.h"

using namespace qccs;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Precondition, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double env_tol() {
    if (const char *s = std::getenv("QCCS_TOL")) {
        char *end = nullptr;
        double v = std::strtod(s, &end);
        if (end != s && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring invalid QCCS_TOL=" << s << "\n";
    }
    return kLpTol;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string complex_text(Complex c) {
    if (c.imag() == 0.0) return fmt(c.real());
    return fmt(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt(std::abs(c.imag())) + "i";
}

void print_matrix(std::ostream &os, const Matrix &m, const std::string &indent) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Complex z = m(i, j);
            if (std::abs(z) < 1e-12) z = 0;
            os << (j ? ", " : "") << complex_text(z);
        }
        os << "]\n";
    }
}

void print_distribution(std::ostream &os, const Distribution &d) {
    for (const auto &[c, p] : d.support) {
        os << "  " << fmt(p) << " * <" << pretty_print(*c.proc) << " ;";
        for (const auto &v : c.ctx.vars()) os << " " << v;
        os << ">\n";
    }
}

Complex scalar_arg(const std::string &text) {
    Matrix m = parse_matrix_expr(text);
    if (m.rows() != 1 || m.cols() != 1) throw Error(ErrorKind::Precondition, "'" + text + "' is not a scalar");
    return m(0, 0);
}

struct Common {
    int threads = 1;
    bool json = false;
};

struct LoadedFile {
    SourceFile source;
    Elaborated program;
};

LoadedFile load(const std::string &path) {
    LoadedFile f;
    f.source = parse(read_file(path));
    f.program = elaborate(f.source);
    return f;
}

int cmd_check(const std::string &path, const Common &common) {
    Json out{{"schema", "qccs-check/1"}, {"file", path}};
    Json problems = Json::array();
    try {
        SourceFile src = parse(read_file(path));
        for (const auto &d : src.procs) {
            if (auto v = check_wellformed(*d.proc)) {
                std::string at;
                for (int i : v->path) at += "/" + std::to_string(i);
                problems.push_back(Json{{"kind", violation_name(v->kind)},
                                        {"where", d.name + (at.empty() ? "" : " at " + at)},
                                        {"line", d.pos.line},
                                        {"col", d.pos.col},
                                        {"message", v->detail}});
            }
        }
        if (problems.empty()) {
            Elaborated el = elaborate(src);
            out["configs"] = Json::array();
            for (const auto &c : el.configs) out["configs"].push_back(c.name);
        }
    } catch (const SourceError &e) {
        problems.push_back(Json{{"kind", error_kind_name(e.kind())},
                                {"where", path},
                                {"line", e.pos().line},
                                {"col", e.pos().col},
                                {"message", e.what()}});
    } catch (const Error &e) {
        problems.push_back(Json{
            {"kind", error_kind_name(e.kind())}, {"where", path}, {"line", 0}, {"col", 0}, {"message", e.what()}});
    }
    out["ok"] = problems.empty();
    out["problems"] = problems;
    if (common.json) {
        std::cout << out.dump(2) << "\n";
    } else if (problems.empty()) {
        std::cout << path << ": ok (" << out["configs"].size() << " configurations)\n";
    } else {
        for (const auto &p : problems) {
            std::cerr << path << ":" << p["line"].get<int>() << ":" << p["col"].get<int>() << ": "
                      << p["kind"].get<std::string>() << ": " << p["where"].get<std::string>() << ": "
                      << p["message"].get<std::string>() << "\n";
        }
    }
    return problems.empty() ? kOk : kFail;
}

const Configuration &pick_config(const LoadedFile &f, const std::string &name) {
    if (!name.empty()) return f.program.config(name);
    if (f.program.configs.empty()) throw Error(ErrorKind::UnknownVar, "the file declares no configuration");
    return f.program.configs.front().config;
}

void open_caveat(bool open) {
    if (open) {
        std::cerr << "note: --open explores inputs from a finite set of values and states only; "
                     "an equivalence verdict may not hold for all environments\n";
    }
}

int cmd_lts(const std::string &path, const std::string &config, const std::string &format, size_t max_nodes,
            int max_depth, bool open, const Common &common) {
    LoadedFile f = load(path);
    InputPolicy policy = f.program.policy;
    policy.closed_only = !open;
    open_caveat(open);
    Lts lts = build_lts(pick_config(f, config), policy, LtsBounds{max_nodes, max_depth, common.threads});
    if (format == "dot") {
        std::cout << lts_to_dot(lts);
    } else {
        std::cout << lts_to_json(lts).dump(2) << "\n";
    }
    return kOk;
}

int cmd_run(const std::string &path, const std::string &config, uint64_t seed, const std::string &sched,
            const std::string &script_path, bool sample, bool open, const Common &common) {
    LoadedFile f = load(path);
    InputPolicy policy = f.program.policy;
    policy.closed_only = !open;
    open_caveat(open);
    Scheduler s;
    s.seed = seed;
    s.sample = sample;
    if (sched == "random") {
        s.kind = SchedulerKind::Random;
    } else if (sched == "script") {
        s.kind = SchedulerKind::Script;
        std::istringstream in(read_file(script_path));
        int k;
        while (in >> k) s.script.push_back(k);
    }
    const Configuration &c0 = pick_config(f, config);
    Trace t;
    try {
        t = run_trace(c0, policy, s);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::Stuck) throw;
        if (common.json) {
            std::cout << Json{{"schema", "qccs-trace/1"}, {"stuck", e.what()}}.dump(2) << "\n";
        } else {
            std::cout << e.what() << "\n";
        }
        return kFail;
    }
    if (common.json) {
        std::cout << trace_to_json(t).dump(2) << "\n";
        return kOk;
    }
    std::cout << "start\n";
    print_distribution(std::cout, Distribution::point(c0));
    for (size_t i = 0; i < t.steps.size(); ++i) {
        std::cout << "step " << i + 1 << ": " << to_string(t.steps[i].action) << "\n";
        print_distribution(std::cout, t.steps[i].after);
    }
    std::cout << "final (" << t.final.support.size() << " branches)\n";
    for (const auto &[c, p] : t.final.support) {
        std::cout << "  " << fmt(p) << " * <" << pretty_print(*c.proc) << ">\n";
        std::string vars;
        for (const auto &v : c.ctx.vars()) vars += (vars.empty() ? "" : ",") + v;
        std::cout << "    " << vars << " =\n";
        print_matrix(std::cout, c.ctx.rho(), "      ");
    }
    return kOk;
}

Mode parse_mode(const std::string &m) {
    if (m == "weak") return Mode::Weak;
    if (m == "eq") return Mode::Equality;
    return Mode::Strong;
}

int cmd_bisim(const std::string &path, std::string left, std::string right, const std::string &mode_text,
              double tol, bool open, size_t max_nodes, const Common &common) {
    LoadedFile f = load(path);
    InputPolicy policy = f.program.policy;
    policy.closed_only = !open;
    open_caveat(open);
    BisimOptions opt{tol, common.threads};
    LtsBounds bounds{max_nodes, 10000, common.threads};

    std::vector<CheckDirective> jobs;
    if (!left.empty() || !right.empty()) {
        if (left.empty() || right.empty()) throw Error(ErrorKind::Precondition, "--left and --right go together");
        jobs.push_back({parse_mode(mode_text), left, right, {}});
    } else {
        jobs = f.program.checks;
        if (jobs.empty()) throw Error(ErrorKind::Precondition, "no --left/--right and no check directives");
    }
    bool all = true;
    Json results = Json::array();
    for (const auto &job : jobs) {
        PairCheck pc = check_configurations(job.mode, f.program.config(job.left), f.program.config(job.right),
                                            policy, bounds, opt);
        Json j = verdict_to_json(pc.verdict, pc.lts);
        j["left_name"] = job.left;
        j["right_name"] = job.right;
        for (const auto &w : pc.verdict.warnings) std::cerr << "warning: " << w << "\n";
        all = all && pc.verdict.equivalent;
        results.push_back(std::move(j));
    }
    if (results.size() == 1) {
        std::cout << results[0].dump(2) << "\n";
    } else {
        std::cout << results.dump(2) << "\n";
    }
    return all ? kOk : kFail;
}

int cmd_laws(const LawOptions &opt, bool congruence, const Common &common) {
    LawReport rep = check_laws(opt);
    if (congruence) rep.merge(check_congruence(opt));
    if (common.json) {
        std::cout << laws_to_json(rep).dump(2) << "\n";
    } else {
        for (const auto &[law, t] : rep.tally) {
            std::cout << (t.failed ? "FAIL " : "ok   ") << law << ": " << t.passed << " passed, " << t.failed
                      << " failed, " << t.skipped << " skipped\n";
        }
        for (const auto &f : rep.failures) {
            std::cout << "failure [" << f.law << "]\n  left:  " << f.left << "\n  right: " << f.right
                      << "\n  " << f.detail << "\n";
        }
    }
    return rep.ok() ? kOk : kFail;
}

int cmd_demo_teleport(const std::string &alpha, const std::string &beta, const Common &common) {
    TeleportResult r = run_teleport(scalar_arg(alpha), scalar_arg(beta));
    if (common.json) {
        std::cout << teleport_to_json(r).dump(2) << "\n";
        return r.ok ? kOk : kFail;
    }
    std::cout << "teleporting " << complex_text(r.alpha) << "|0> + " << complex_text(r.beta) << "|1>\n";
    for (size_t i = 0; i < r.trace.steps.size(); ++i) {
        const auto &s = r.trace.steps[i];
        std::cout << "step " << i + 1 << ": " << to_string(s.action) << ", " << s.after.support.size()
                  << " branch" << (s.after.support.size() == 1 ? "" : "es") << "\n";
    }
    std::cout << "terminal distribution: " << r.branches.size() << " branches\n";
    for (const auto &b : r.branches) {
        std::cout << "  p = " << fmt(b.probability) << ", max error " << fmt(b.error) << ", " << r.bob_qubit
                  << " =\n";
        print_matrix(std::cout, b.bob, "    ");
    }
    std::cout << (r.ok ? "teleportation verified\n" : "teleportation FAILED\n");
    return r.ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qccs: quantum process calculus interpreter and equivalence checker"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);

    std::string file, config, format = "json", left, right, mode = "strong", sched = "first", script;
    size_t max_nodes = 200000;
    int max_depth = 10000;
    bool open = false, sample = false, congruence = false;
    uint64_t seed = 0;
    double tol = env_tol();

    auto *check = app.add_subcommand("check", "parse, validate and elaborate a file");
    check->add_option("file", file)->required();
    check->add_flag("--json", common.json);

    auto *lts = app.add_subcommand("lts", "build the transition system of a configuration");
    lts->add_option("file", file)->required();
    lts->add_option("--config", config, "configuration name (default: the first)");
    lts->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    lts->add_option("--max-nodes", max_nodes);
    lts->add_option("--max-depth", max_depth);
    lts->add_flag("--open", open, "enumerate environment inputs");

    auto *run = app.add_subcommand("run", "execute one scheduler run");
    run->add_option("file", file)->required();
    run->add_option("--config", config);
    run->add_option("--seed", seed);
    run->add_option("--scheduler", sched)->check(CLI::IsMember({"first", "random", "script"}));
    run->add_option("--script", script, "file of transition indices for --scheduler script");
    run->add_flag("--sample", sample, "sample one outcome at probabilistic branches");
    run->add_flag("--open", open);
    run->add_flag("--json", common.json);

    auto *bisim = app.add_subcommand("bisim", "decide strong/weak bisimilarity or equality");
    bisim->add_option("file", file)->required();
    bisim->add_option("--left", left);
    bisim->add_option("--right", right);
    bisim->add_option("--mode", mode)->check(CLI::IsMember({"strong", "weak", "eq"}));
    bisim->add_option("--tol", tol)->check(CLI::PositiveNumber);
    bisim->add_option("--max-nodes", max_nodes);
    bisim->add_flag("--open", open);
    bisim->add_flag("--json", common.json, "accepted for symmetry; output is always JSON");

    LawOptions law;
    auto *laws = app.add_subcommand("laws", "run the static-law and congruence property suites");
    laws->add_option("--samples", law.samples);
    laws->add_option("--pairs", law.pairs);
    laws->add_option("--seed", law.seed);
    laws->add_option("--max-depth", law.max_depth);
    laws->add_flag("--mutate", law.mutate, "swap a gate on the right-hand side of every law");
    laws->add_flag("--congruence", congruence);
    laws->add_flag("--json", common.json);

    std::string alpha = "1", beta = "0";
    auto *demo = app.add_subcommand("demo", "built-in demonstrations");
    demo->require_subcommand(1);
    auto *teleport = demo->add_subcommand("teleport", "teleport alpha|0> + beta|1>");
    teleport->add_option("--alpha", alpha, "amplitude expression, e.g. 1/sqrt(2) or 0.6i");
    teleport->add_option("--beta", beta);
    teleport->add_flag("--json", common.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }

    try {
        if (*check) return cmd_check(file, common);
        if (*lts) return cmd_lts(file, config, format, max_nodes, max_depth, open, common);
        if (*run) return cmd_run(file, config, seed, sched, script, sample, open, common);
        if (*bisim) return cmd_bisim(file, left, right, mode, tol, open, max_nodes, common);
        if (*laws) {
            law.tol = tol;
            law.threads = common.threads;
            return cmd_laws(law, congruence, common);
        }
        if (*teleport) return cmd_demo_teleport(alpha, beta, common);
    } catch (const SourceError &e) {
        std::cerr << (file.empty() ? std::string("teleport.qccs") : file) << ":" << e.what() << "\n";
        return kError;
    } catch (const Error &e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        if (e.kind() == ErrorKind::OpenProcess) std::cerr << "hint: pass --open to enumerate inputs\n";
        return kError;
    }
    return kError;
}
