#pragma once

// Line-oriented text formats.
//
//   .aut   kind dfa|moore|mealy / alphabet s1 s2 .. / states n / initial i /
//          accepting i j .. (dfa) / output i v (moore) / output i sym v (mealy) /
//          trans i sym j
//   .wa    kind wa / alphabet a b / dim n / init i v / final i v / trans i sym j v
//   .rna   kind rna / loc name arity / initial name / accepting name .. /
//          trans src (eq k | fresh) target [r1 .. x]
//   suite  one word per line, symbols separated by spaces, `-eps-` for ε
//   pattern one pattern per line, class labels separated by spaces, `-eps-` for ε
//
// `#` starts a comment line. Every parse error carries the line number.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "wmethod/fsm.hpp"
#include "wmethod/nominal.hpp"
#include "wmethod/weighted.hpp"
#include "wmethod/words.hpp"

namespace wmethod {

using Machine = std::variant<Fsm, Wa, Rna>;

Machine parse_machine(std::string_view text, const std::string& file = {});
Fsm parse_fsm(std::string_view text, const std::string& file = {});
Wa parse_wa(std::string_view text, const std::string& file = {});
Rna parse_rna(std::string_view text, const std::string& file = {});

std::string serialize_machine(const Machine& m);
std::string serialize_fsm(const Fsm& m);
std::string serialize_wa(const Wa& m);
std::string serialize_rna(const Rna& m);

Suite parse_suite(std::string_view text, const Alphabet& alphabet, const std::string& file = {});
std::string serialize_suite(const Suite& t);

OrbitSuite parse_orbit_suite(std::string_view text, const std::string& file = {});
std::string serialize_suite(const OrbitSuite& t);

/// Reads a whole file; throws ParseError (line 0) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
Machine load_machine(const std::filesystem::path& path);

} // namespace wmethod
