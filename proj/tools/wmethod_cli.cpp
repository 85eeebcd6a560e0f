// wmethod: generate, run and validate W-method test suites for DFAs, Moore and
// Mealy machines, weighted automata and register (nominal) automata.
//
// Exit codes: 0 success, 1 failing test or inequivalence, 2 usage or parse
// error, 3 violated precondition.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wmethod/error.hpp"
#include "wmethod/faultsim.hpp"
#include "wmethod/formats.hpp"

using namespace wmethod;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kPrecondition = 3 };

struct Globals {
    std::uint64_t seed = 1;
    bool quiet = false;
};

void info(const Globals& g, const std::string& msg) {
    if (!g.quiet) std::cerr << msg << '\n';
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text)) throw ParseError(out_path, 0, "cannot write file");
}

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

const char* family_name(const Machine& m) {
    return std::visit(overloaded{[](const Fsm&) { return "fsm"; }, [](const Wa&) { return "wa"; },
                                 [](const Rna&) { return "rna"; }},
                      m);
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    std::string spec;
    std::size_t k = 0;
    std::string cover, charset, out;
    bool prefix_closed = false;
    bool allow_nonminimal = false;
};

Fsm minimal_fsm(const Fsm& m, const GenOptions& o, const Globals& g) {
    if (is_minimal(m)) return m;
    if (!o.allow_nonminimal)
        throw PreconditionError("specification is not minimal (use --allow-nonminimal to minimize it first)");
    Fsm small = minimize(m);
    info(g, "minimized specification from " + std::to_string(m.n_states()) + " to " +
                std::to_string(small.n_states()) + " states");
    return small;
}

Wa minimal_wa(const Wa& a, const GenOptions& o, const Globals& g) {
    const std::size_t reach = forward_basis(a).rank();
    if (is_minimal_wa(a) && reach == a.dim()) return a;
    if (!o.allow_nonminimal)
        throw PreconditionError("weighted specification is not minimal: reachable rank " + std::to_string(reach) +
                                " of dimension " + std::to_string(a.dim()) +
                                " (use --allow-nonminimal to reduce it first)");
    Wa small = minimize_wa(a);
    info(g, "reduced specification from dimension " + std::to_string(a.dim()) + " to " + std::to_string(small.dim()));
    return small;
}

int cmd_gen(const GenOptions& o, const Globals& g) {
    const Machine m = load_machine(o.spec);
    std::string text;
    std::size_t np = 0, nw = 0, nt = 0;
    if (const auto* f = std::get_if<Fsm>(&m)) {
        const Fsm spec = minimal_fsm(*f, o, g);
        const Alphabet& ab = spec.alphabet();
        const Suite p = o.cover.empty() ? state_cover(spec) : parse_suite(read_file(o.cover), ab, o.cover);
        if (!p.contains_epsilon() || !find_cover_map(spec, p))
            throw PreconditionError("given cover is not a (weak) state cover of the specification");
        const Suite w = o.charset.empty() ? char_set(spec) : parse_suite(read_file(o.charset), ab, o.charset);
        if (!is_char_set(spec, w)) throw PreconditionError("given set is not a characterization set");
        Suite t = w_suite(p, ab, o.k, w);
        if (o.prefix_closed) t = prefix_close(t);
        np = p.size(), nw = w.size(), nt = t.size();
        text = serialize_suite(t);
    } else if (const auto* a = std::get_if<Wa>(&m)) {
        const Wa spec = minimal_wa(*a, o, g);
        const Alphabet& ab = spec.alphabet();
        const Suite p = o.cover.empty() ? Suite(ab, forward_basis(spec).witnesses)
                                        : parse_suite(read_file(o.cover), ab, o.cover);
        if (!is_state_cover_wa(spec, p)) throw PreconditionError("given cover does not span the state space");
        const Suite w = o.charset.empty() ? Suite(ab, backward_basis(spec).witnesses)
                                          : parse_suite(read_file(o.charset), ab, o.charset);
        if (!is_char_set_wa(spec, w)) throw PreconditionError("given set is not a characterization set");
        Suite t = w_suite(p, ab, o.k, w);
        if (o.prefix_closed) t = prefix_close(t);
        np = p.size(), nw = w.size(), nt = t.size();
        text = serialize_suite(t);
    } else {
        const Rna& spec = std::get<Rna>(m);
        if (!is_minimal_rna(spec)) throw PreconditionError("register automaton specification is not minimal");
        const OrbitSuite p = o.cover.empty() ? weak_cover_rna(spec).p : parse_orbit_suite(read_file(o.cover), o.cover);
        if (!p.contains_epsilon() || !find_cover_map_rna(spec, p))
            throw PreconditionError("given patterns are not a weak state cover of the specification");
        const OrbitSuite w = o.charset.empty() ? char_set_rna(spec) : parse_orbit_suite(read_file(o.charset), o.charset);
        if (!is_char_set_rna(spec, w)) throw PreconditionError("given patterns are not a characterization set");
        OrbitSuite t = w_suite_rna(p, o.k, w);
        if (o.prefix_closed) t = prefix_close_orbit(t);
        np = p.size(), nw = w.size(), nt = t.size();
        text = serialize_suite(t);
    }
    emit(text, o.out);
    info(g, "|P|=" + std::to_string(np) + " |W|=" + std::to_string(nw) + " suite=" + std::to_string(nt));
    return kOk;
}

// ---------------------------------------------------------------------------
// run / equiv

template <class V, class Format>
int print_verdicts(const std::vector<V>& verdicts, Format&& format) {
    bool ok = true;
    for (const auto& v : verdicts) {
        std::cout << (v.pass ? "PASS " : "FAIL ") << format(v.word) << ' ' << v.spec_out << ' ' << v.impl_out << '\n';
        ok = ok && v.pass;
    }
    return ok ? kOk : kFail;
}

int cmd_run(const std::string& spec_path, const std::string& impl_path, const std::string& suite_path) {
    const Machine spec = load_machine(spec_path);
    const Machine impl = load_machine(impl_path);
    if (spec.index() != impl.index())
        throw MismatchError(std::string("specification is ") + family_name(spec) + " but implementation is " +
                            family_name(impl));
    const std::string text = read_file(suite_path);
    if (const auto* f = std::get_if<Fsm>(&spec)) {
        const Suite t = parse_suite(text, f->alphabet(), suite_path);
        return print_verdicts(agree_on(*f, std::get<Fsm>(impl), t),
                              [&](const Word& w) { return format_word(f->alphabet(), w); });
    }
    if (const auto* a = std::get_if<Wa>(&spec)) {
        const Suite t = parse_suite(text, a->alphabet(), suite_path);
        return print_verdicts(agree_on_wa(*a, std::get<Wa>(impl), t),
                              [&](const Word& w) { return format_word(a->alphabet(), w); });
    }
    const OrbitSuite t = parse_orbit_suite(text, suite_path);
    return print_verdicts(agree_on_rna(std::get<Rna>(spec), std::get<Rna>(impl), t),
                          [](const SymbolicWord& s) { return format_pattern(s); });
}

int cmd_equiv(const std::string& a_path, const std::string& b_path) {
    const Machine a = load_machine(a_path);
    const Machine b = load_machine(b_path);
    if (a.index() != b.index())
        throw MismatchError(std::string("cannot compare ") + family_name(a) + " with " + family_name(b));
    std::optional<std::string> cex;
    if (const auto* f = std::get_if<Fsm>(&a)) {
        auto r = equiv(*f, std::get<Fsm>(b));
        if (!r.equivalent) cex = format_word(f->alphabet(), *r.counterexample);
    } else if (const auto* w = std::get_if<Wa>(&a)) {
        auto r = equiv_wa(*w, std::get<Wa>(b));
        if (!r.equivalent) cex = format_word(w->alphabet(), *r.counterexample);
    } else {
        auto r = equiv_rna(std::get<Rna>(a), std::get<Rna>(b));
        if (r.exhausted) throw PreconditionError("exploration limit reached before a verdict");
        if (!r.equivalent) cex = format_pattern(*r.counterexample);
    }
    if (!cex) {
        std::cout << "equivalent\n";
        return kOk;
    }
    std::cout << "inequivalent " << *cex << '\n';
    return kFail;
}

// ---------------------------------------------------------------------------
// minimize / cover / charset

int cmd_minimize(const std::string& path, const std::string& out) {
    const Machine m = load_machine(path);
    if (const auto* f = std::get_if<Fsm>(&m)) {
        emit(serialize_fsm(minimize(*f)), out);
    } else if (const auto* a = std::get_if<Wa>(&m)) {
        emit(serialize_wa(minimize_wa(*a)), out);
    } else {
        throw MismatchError("minimize is not available for register automata");
    }
    return kOk;
}

int cmd_cover(const std::string& path, const std::string& out) {
    const Machine m = load_machine(path);
    if (const auto* f = std::get_if<Fsm>(&m)) {
        emit(serialize_suite(state_cover(*f)), out);
    } else if (const auto* a = std::get_if<Wa>(&m)) {
        auto fwd = forward_basis(*a);
        if (fwd.rank() != a->dim())
            throw PreconditionError("no state cover: reachable rank " + std::to_string(fwd.rank()) + " of dimension " +
                                    std::to_string(a->dim()) + " (run minimize first)");
        emit(serialize_suite(Suite(a->alphabet(), fwd.witnesses)), out);
    } else {
        emit(serialize_suite(weak_cover_rna(std::get<Rna>(m)).p), out);
    }
    return kOk;
}

int cmd_charset(const std::string& path, const std::string& out) {
    const Machine m = load_machine(path);
    if (const auto* f = std::get_if<Fsm>(&m)) {
        emit(serialize_suite(char_set(*f)), out);
    } else if (const auto* a = std::get_if<Wa>(&m)) {
        emit(serialize_suite(Suite(a->alphabet(), backward_basis(*a).witnesses)), out);
    } else {
        emit(serialize_suite(char_set_rna(std::get<Rna>(m))), out);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// faultsim

struct FaultsimOptions {
    std::string spec;
    std::size_t k = 0;
    std::size_t mutants = 100;
    std::vector<std::string> extra;
};

template <class M>
std::vector<M> load_extra(const std::vector<std::string>& paths) {
    std::vector<M> out;
    for (const auto& p : paths) {
        Machine m = load_machine(p);
        if (!std::holds_alternative<M>(m)) throw MismatchError("extra mutant " + p + " is of a different family");
        out.push_back(std::get<M>(std::move(m)));
    }
    return out;
}

int cmd_faultsim(const FaultsimOptions& o, const Globals& g) {
    const Machine m = load_machine(o.spec);
    ExperimentReport r;
    if (const auto* f = std::get_if<Fsm>(&m)) {
        r = completeness_experiment(*f, o.k, {Family::fsm, o.k, o.mutants, g.seed}, load_extra<Fsm>(o.extra));
    } else if (const auto* a = std::get_if<Wa>(&m)) {
        r = completeness_experiment(*a, o.k, {Family::wa, o.k, o.mutants, g.seed}, load_extra<Wa>(o.extra));
    } else {
        r = completeness_experiment(std::get<Rna>(m), o.k, {Family::rna, o.k, o.mutants, g.seed},
                                    load_extra<Rna>(o.extra));
    }
    std::cout << r.render();
    return r.passed() ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"W-method conformance testing for automata, weighted automata and register automata"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for mutant generation")->capture_default_str();
    app.add_flag("--quiet,-q", g.quiet, "Suppress informational messages on stderr");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write the W-method suite P·Σ^{≤k+1}·W for a specification");
    gen_cmd->add_option("--k", gen.k, "Number of extra states the implementation may have")->capture_default_str();
    gen_cmd->add_option("--cover", gen.cover, "State cover file (computed when omitted)");
    gen_cmd->add_option("--charset", gen.charset, "Characterization set file (computed when omitted)");
    gen_cmd->add_flag("--prefix-closed", gen.prefix_closed, "Close the suite under prefixes");
    gen_cmd->add_flag("--allow-nonminimal", gen.allow_nonminimal, "Minimize a non-minimal specification first");
    gen_cmd->add_option("-o,--output", gen.out, "Output file (stdout when omitted)");
    gen_cmd->add_option("spec", gen.spec, "Specification file")->required();

    std::string spec, impl, suite, out;
    auto* run_cmd = app.add_subcommand("run", "Run a suite on specification and implementation");
    run_cmd->add_option("spec", spec, "Specification file")->required();
    run_cmd->add_option("impl", impl, "Implementation file")->required();
    run_cmd->add_option("suite", suite, "Suite file")->required();

    auto* equiv_cmd = app.add_subcommand("equiv", "Decide language equivalence of two machines");
    equiv_cmd->add_option("a", spec, "First machine")->required();
    equiv_cmd->add_option("b", impl, "Second machine")->required();

    auto* min_cmd = app.add_subcommand("minimize", "Print the minimal equivalent machine");
    min_cmd->add_option("-o,--output", out, "Output file (stdout when omitted)");
    min_cmd->add_option("machine", spec, "Machine file")->required();

    auto* cover_cmd = app.add_subcommand("cover", "Print a state cover");
    cover_cmd->add_option("-o,--output", out, "Output file (stdout when omitted)");
    cover_cmd->add_option("machine", spec, "Machine file")->required();

    auto* charset_cmd = app.add_subcommand("charset", "Print a characterization set");
    charset_cmd->add_option("-o,--output", out, "Output file (stdout when omitted)");
    charset_cmd->add_option("machine", spec, "Machine file")->required();

    FaultsimOptions fs;
    auto* fs_cmd = app.add_subcommand("faultsim", "Mutation experiment against the equivalence oracle");
    fs_cmd->add_option("--k", fs.k, "Extra states of the fault domain")->capture_default_str();
    fs_cmd->add_option("--mutants", fs.mutants, "Number of generated mutants")->capture_default_str();
    fs_cmd->add_option("--extra", fs.extra, "Additional mutant files, reported after the generated ones");
    fs_cmd->add_option("spec", fs.spec, "Specification file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, g);
        if (*run_cmd) return cmd_run(spec, impl, suite);
        if (*equiv_cmd) return cmd_equiv(spec, impl);
        if (*min_cmd) return cmd_minimize(spec, out);
        if (*cover_cmd) return cmd_cover(spec, out);
        if (*charset_cmd) return cmd_charset(spec, out);
        if (*fs_cmd) return cmd_faultsim(fs, g);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const MismatchError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPrecondition;
    }
    return kUsage;
}
