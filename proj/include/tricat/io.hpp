#pragma once

// The JSON category file: presentation, shift, generating triangles,
// named subcategories and an optional quotient sidecar.

#include "tricat/quotient.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace tricat::io {

// Syntax errors carry a 1-based line and column; schema errors carry the
// JSON pointer of the offending value and line 0.
struct FormatError : std::runtime_error {
  FormatError(const std::string& msg, std::size_t line = 0, std::size_t column = 0);
  std::size_t line, column;
};

struct CategoryFile {
  int format = 1;
  CategoryPtr category;
  std::vector<Triangle> triangles;
  std::map<std::string, Subcat> subcats;
  nlohmann::json quotient;  // null unless the file carries a sidecar
};

CategoryFile parse(const std::string& text);
CategoryFile load(const std::string& path);  // also FormatError when unreadable

nlohmann::json to_json(const Category& c, const std::vector<Triangle>& triangles = {},
                       const std::map<std::string, Subcat>& subcats = {});
nlohmann::json triangle_to_json(const Category& c, const Triangle& t);
// Projection matrices and fixed sigma triangles, in terms of the base.
nlohmann::json quotient_sidecar(const Quotient& q);

// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace tricat::io
