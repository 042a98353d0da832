#pragma once

#include <filesystem>
#include <iostream>
#include <string>

#include "json.hpp"
#include "normpack/bodies/body_io.hpp"

namespace normpack::cli {

/// A body argument is either a path to a JSON file or inline JSON.
inline bodies::BodySpec body_argument(const std::string& arg) {
  if (std::filesystem::exists(arg)) return bodies::load_body_spec(arg);
  try {
    return bodies::parse_body_spec(nlohmann::json::parse(arg));
  } catch (const nlohmann::json::parse_error&) {
    throw std::invalid_argument("'" + arg + "' is neither a file nor a JSON body spec");
  }
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace normpack::cli
