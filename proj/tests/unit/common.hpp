#pragma once

#include <string>

#include "symwcet/program.hpp"

namespace symwcet::testing {

inline std::string data_path(const std::string& name) { return std::string(SYMWCET_TEST_DATA_DIR) + "/" + name; }

inline Program load_data(const std::string& name) { return load_program(data_path(name + ".json")); }

}  // namespace symwcet::testing
