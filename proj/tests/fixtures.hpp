#pragma once

#include <string>

#include "wmethod/formats.hpp"

#ifndef WMETHOD_DATA_DIR
#error "WMETHOD_DATA_DIR must point at the fixture directory"
#endif

namespace fixture {

inline std::string path(const std::string& name) { return std::string(WMETHOD_DATA_DIR) + "/" + name; }

inline wmethod::Fsm fsm(const std::string& name) { return std::get<wmethod::Fsm>(wmethod::load_machine(path(name))); }
inline wmethod::Wa wa(const std::string& name) { return std::get<wmethod::Wa>(wmethod::load_machine(path(name))); }
inline wmethod::Rna rna(const std::string& name) { return std::get<wmethod::Rna>(wmethod::load_machine(path(name))); }

} // namespace fixture
