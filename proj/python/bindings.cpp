// Python bindings. Words are tuples of symbol names, register-automaton
// patterns are tuples of class labels starting at 1, and the empty tuple is ε.

#include <algorithm>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wmethod/error.hpp"
#include "wmethod/faultsim.hpp"
#include "wmethod/formats.hpp"

namespace py = pybind11;
using namespace wmethod;

namespace {

using PyWord = std::vector<std::string>;
using PyPattern = std::vector<std::uint32_t>;
using PyWords = std::variant<std::vector<PyWord>, std::vector<PyPattern>>;

Word to_word(const Alphabet& ab, const PyWord& w) {
    Word out;
    for (const auto& s : w) out.push_back(ab.at(s));
    return out;
}

PyWord from_word(const Alphabet& ab, const Word& w) {
    PyWord out;
    for (Symbol s : w) out.push_back(ab.name(s));
    return out;
}

Suite to_suite(const Alphabet& ab, const std::vector<PyWord>& ws) {
    std::vector<Word> out;
    for (const auto& w : ws) out.push_back(to_word(ab, w));
    return Suite(ab, std::move(out));
}

std::vector<PyWord> from_suite(const Suite& t) {
    std::vector<PyWord> out;
    for (const auto& w : t) out.push_back(from_word(t.alphabet(), w));
    return out;
}

OrbitSuite to_orbits(const std::vector<PyPattern>& ps) {
    std::vector<SymbolicWord> out;
    for (const auto& p : ps) out.emplace_back(p);
    return OrbitSuite(std::move(out));
}

std::vector<PyPattern> from_orbits(const OrbitSuite& t) {
    std::vector<PyPattern> out;
    for (const auto& p : t.patterns()) out.push_back(p.labels());
    return out;
}

Machine machine_arg(const py::handle& h) {
    if (py::isinstance<Fsm>(h)) return h.cast<Fsm>();
    if (py::isinstance<Wa>(h)) return h.cast<Wa>();
    if (py::isinstance<Rna>(h)) return h.cast<Rna>();
    throw py::type_error("expected an Fsm, Wa or Rna");
}

py::object to_py(Machine m) {
    return std::visit([](auto&& x) { return py::cast(std::move(x)); }, std::move(m));
}

const Alphabet& alphabet_of(const Machine& m) {
    if (const auto* f = std::get_if<Fsm>(&m)) return f->alphabet();
    if (const auto* a = std::get_if<Wa>(&m)) return a->alphabet();
    throw MismatchError("register automata have no finite alphabet");
}

std::vector<PyWord> words_arg(const Machine& m, const std::optional<PyWords>& ws, const char* what) {
    if (!ws) return {};
    if (const auto* w = std::get_if<std::vector<PyWord>>(&*ws)) return *w;
    const auto& ps = std::get<std::vector<PyPattern>>(*ws);
    if (std::ranges::all_of(ps, [](const PyPattern& p) { return p.empty(); })) return std::vector<PyWord>(ps.size());
    throw MismatchError(std::string(what) + " must list words over the alphabet of " +
                        (std::holds_alternative<Fsm>(m) ? "the machine" : "the automaton"));
}

std::vector<PyPattern> patterns_arg(const std::optional<PyWords>& ws, const char* what) {
    if (!ws) return {};
    if (const auto* p = std::get_if<std::vector<PyPattern>>(&*ws)) return *p;
    const auto& ws2 = std::get<std::vector<PyWord>>(*ws);
    if (std::ranges::all_of(ws2, [](const PyWord& w) { return w.empty(); })) return std::vector<PyPattern>(ws2.size());
    throw MismatchError(std::string(what) + " must list patterns of class labels");
}

PyWords state_cover_of(const Machine& m) {
    if (const auto* f = std::get_if<Fsm>(&m)) return from_suite(state_cover(*f));
    if (const auto* a = std::get_if<Wa>(&m)) return from_suite(Suite(a->alphabet(), forward_basis(*a).witnesses));
    return from_orbits(weak_cover_rna(std::get<Rna>(m)).p);
}

PyWords char_set_of(const Machine& m) {
    if (const auto* f = std::get_if<Fsm>(&m)) return from_suite(char_set(*f));
    if (const auto* a = std::get_if<Wa>(&m)) return from_suite(Suite(a->alphabet(), backward_basis(*a).witnesses));
    return from_orbits(char_set_rna(std::get<Rna>(m)));
}

bool is_char_set_of(const Machine& m, const PyWords& w) {
    if (const auto* f = std::get_if<Fsm>(&m)) return is_char_set(*f, to_suite(f->alphabet(), words_arg(m, w, "W")));
    if (const auto* a = std::get_if<Wa>(&m)) return is_char_set_wa(*a, to_suite(a->alphabet(), words_arg(m, w, "W")));
    return is_char_set_rna(std::get<Rna>(m), to_orbits(patterns_arg(w, "W")));
}

bool is_minimal_of(const Machine& m) {
    if (const auto* f = std::get_if<Fsm>(&m)) return is_minimal(*f);
    if (const auto* a = std::get_if<Wa>(&m)) return is_minimal_wa(*a) && forward_basis(*a).rank() == a->dim();
    return is_minimal_rna(std::get<Rna>(m));
}

PyWords w_suite_of(const Machine& m, std::size_t k, const std::optional<PyWords>& cover,
                   const std::optional<PyWords>& charset, bool prefix_closed) {
    if (const auto* r = std::get_if<Rna>(&m)) {
        const OrbitSuite p = cover ? to_orbits(patterns_arg(cover, "cover")) : weak_cover_rna(*r).p;
        if (!p.contains_epsilon() || !find_cover_map_rna(*r, p))
            throw PreconditionError("given patterns are not a weak state cover of the specification");
        const OrbitSuite w = charset ? to_orbits(patterns_arg(charset, "charset")) : char_set_rna(*r);
        if (!is_char_set_rna(*r, w)) throw PreconditionError("given patterns are not a characterization set");
        OrbitSuite t = w_suite_rna(p, k, w);
        return from_orbits(prefix_closed ? prefix_close_orbit(t) : t);
    }
    const Alphabet& ab = alphabet_of(m);
    const Suite p = cover ? to_suite(ab, words_arg(m, cover, "cover"))
                          : to_suite(ab, std::get<std::vector<PyWord>>(state_cover_of(m)));
    const Suite w = charset ? to_suite(ab, words_arg(m, charset, "charset"))
                            : to_suite(ab, std::get<std::vector<PyWord>>(char_set_of(m)));
    if (const auto* f = std::get_if<Fsm>(&m)) {
        if (!p.contains_epsilon() || !find_cover_map(*f, p))
            throw PreconditionError("given cover is not a (weak) state cover of the specification");
        if (!is_char_set(*f, w)) throw PreconditionError("given set is not a characterization set");
    } else {
        const Wa& a = std::get<Wa>(m);
        if (!is_state_cover_wa(a, p)) throw PreconditionError("given cover does not span the state space");
        if (!is_char_set_wa(a, w)) throw PreconditionError("given set is not a characterization set");
    }
    Suite t = w_suite(p, ab, k, w);
    return from_suite(prefix_closed ? prefix_close(t) : t);
}

void same_family(const Machine& a, const Machine& b) {
    if (a.index() != b.index()) throw MismatchError("machines belong to different families");
}

py::list run_of(const Machine& spec, const Machine& impl, const PyWords& suite) {
    same_family(spec, impl);
    py::list out;
    const auto add = [&](py::object word, const auto& v) {
        out.append(py::make_tuple(v.pass, word, v.spec_out, v.impl_out));
    };
    if (const auto* r = std::get_if<Rna>(&spec)) {
        std::vector<SymbolicWord> ps;
        for (const auto& p : patterns_arg(suite, "suite")) ps.emplace_back(p);
        for (const auto& v : agree_on_rna(*r, std::get<Rna>(impl), std::span<const SymbolicWord>(ps)))
            add(py::cast(v.word.labels()), v);
        return out;
    }
    const Alphabet& ab = alphabet_of(spec);
    std::vector<Word> ws;
    for (const auto& w : words_arg(spec, suite, "suite")) ws.push_back(to_word(ab, w));
    const auto verdicts = std::holds_alternative<Fsm>(spec)
                              ? agree_on(std::get<Fsm>(spec), std::get<Fsm>(impl), std::span<const Word>(ws))
                              : agree_on_wa(std::get<Wa>(spec), std::get<Wa>(impl), std::span<const Word>(ws));
    for (const auto& v : verdicts) add(py::cast(from_word(ab, v.word)), v);
    return out;
}

py::object equiv_of(const Machine& a, const Machine& b) {
    same_family(a, b);
    if (const auto* f = std::get_if<Fsm>(&a)) {
        auto r = equiv(*f, std::get<Fsm>(b));
        return r.equivalent ? py::none() : py::cast(from_word(f->alphabet(), *r.counterexample));
    }
    if (const auto* w = std::get_if<Wa>(&a)) {
        auto r = equiv_wa(*w, std::get<Wa>(b));
        return r.equivalent ? py::none() : py::cast(from_word(w->alphabet(), *r.counterexample));
    }
    auto r = equiv_rna(std::get<Rna>(a), std::get<Rna>(b));
    if (r.exhausted) throw PreconditionError("exploration limit reached before a verdict");
    return r.equivalent ? py::none() : py::cast(r.counterexample->labels());
}

Machine minimize_of(const Machine& m) {
    if (const auto* f = std::get_if<Fsm>(&m)) return minimize(*f);
    if (const auto* a = std::get_if<Wa>(&m)) return minimize_wa(*a);
    throw MismatchError("minimization is not supported for register automata");
}

std::string value_of(const Machine& m, const py::object& word) {
    if (const auto* f = std::get_if<Fsm>(&m)) return lang_value(*f, to_word(f->alphabet(), word.cast<PyWord>())).str();
    if (const auto* a = std::get_if<Wa>(&m)) return to_string(wa_lang(*a, to_word(a->alphabet(), word.cast<PyWord>())));
    return symbolic_run(std::get<Rna>(m), SymbolicWord(word.cast<PyPattern>())).accepting ? "1" : "0";
}

ExperimentReport faultsim_of(const Machine& spec, std::size_t k, std::size_t mutants, std::uint64_t seed) {
    if (const auto* f = std::get_if<Fsm>(&spec)) return completeness_experiment(*f, k, {Family::fsm, k, mutants, seed});
    if (const auto* a = std::get_if<Wa>(&spec)) return completeness_experiment(*a, k, {Family::wa, k, mutants, seed});
    return completeness_experiment(std::get<Rna>(spec), k, {Family::rna, k, mutants, seed});
}

template <class M>
void machine_methods(py::class_<M>& c) {
    c.def("__str__", [](const M& m) { return serialize_machine(Machine(m)); })
        .def("__eq__", [](const M& a, const M& b) { return a == b; })
        .def("value", [](const M& m, const py::object& w) { return value_of(Machine(m), w); }, py::arg("word"),
             "Output of the machine on a word (or pattern), as text.");
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "W-method test suites for DFAs, Moore/Mealy machines, weighted and register automata";

    auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(mod, "ParseError", base.ptr());
    py::register_exception<MismatchError>(mod, "MismatchError", base.ptr());
    py::register_exception<PreconditionError>(mod, "PreconditionError", base.ptr());

    py::class_<Fsm> fsm(mod, "Fsm");
    fsm.def_property_readonly("kind", [](const Fsm& m) { return std::string(to_string(m.kind())); })
        .def_property_readonly("n_states", &Fsm::n_states)
        .def_property_readonly("alphabet", [](const Fsm& m) { return m.alphabet().names(); });
    machine_methods(fsm);

    py::class_<Wa> wa(mod, "Wa");
    wa.def_property_readonly("dim", &Wa::dim).def_property_readonly("alphabet", [](const Wa& m) {
        return m.alphabet().names();
    });
    machine_methods(wa);

    py::class_<Rna> rna(mod, "Rna");
    rna.def_property_readonly("n_locations", &Rna::n_locations);
    machine_methods(rna);

    py::class_<ExperimentReport>(mod, "ExperimentReport")
        .def_property_readonly("passed", &ExperimentReport::passed)
        .def_property_readonly("suite_size", [](const ExperimentReport& r) { return r.suite_size; })
        .def_property_readonly("n_mutants", [](const ExperimentReport& r) { return r.outcomes.size(); })
        .def_property_readonly("in_domain_survivors", &ExperimentReport::in_domain_survivors)
        .def("__str__", &ExperimentReport::render);

    mod.def("parse", [](const std::string& text) { return to_py(parse_machine(text)); }, py::arg("text"));
    mod.def("load", [](const std::string& path) { return to_py(load_machine(path)); }, py::arg("path"));
    mod.def("is_minimal", [](py::handle m) { return is_minimal_of(machine_arg(m)); }, py::arg("machine"));
    mod.def("minimize", [](py::handle m) { return to_py(minimize_of(machine_arg(m))); }, py::arg("machine"));
    mod.def("state_cover", [](py::handle m) { return state_cover_of(machine_arg(m)); }, py::arg("machine"));
    mod.def("char_set", [](py::handle m) { return char_set_of(machine_arg(m)); }, py::arg("machine"));
    mod.def("is_char_set", [](py::handle m, const PyWords& w) { return is_char_set_of(machine_arg(m), w); },
            py::arg("machine"), py::arg("words"));
    mod.def(
        "w_suite",
        [](py::handle m, std::size_t k, const std::optional<PyWords>& cover, const std::optional<PyWords>& charset,
           bool prefix_closed) { return w_suite_of(machine_arg(m), k, cover, charset, prefix_closed); },
        py::arg("spec"), py::arg("k") = 0, py::arg("cover") = py::none(), py::arg("charset") = py::none(),
        py::arg("prefix_closed") = false);
    mod.def(
        "run", [](py::handle s, py::handle i, const PyWords& t) { return run_of(machine_arg(s), machine_arg(i), t); },
        py::arg("spec"), py::arg("impl"), py::arg("suite"),
        "One (passed, word, spec_out, impl_out) tuple per test, in the given order.");
    mod.def(
        "equiv", [](py::handle a, py::handle b) { return equiv_of(machine_arg(a), machine_arg(b)); }, py::arg("a"),
        py::arg("b"), "None if equivalent, else a shortest counterexample.");
    mod.def(
        "faultsim",
        [](py::handle m, std::size_t k, std::size_t mutants, std::uint64_t seed) {
            return faultsim_of(machine_arg(m), k, mutants, seed);
        },
        py::arg("spec"), py::arg("k") = 0, py::arg("mutants") = 100, py::arg("seed") = 1);
}
