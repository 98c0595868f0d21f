#ifndef BALLCOMP_IO_HPP
#define BALLCOMP_IO_HPP

#include <string>

#include "ballcomp/lfm.hpp"

namespace ballcomp {

/// Map-spec text format: a JSON record with fields n, A, B, C, d; complex
/// numbers as two-element arrays [re, im], matrices row-major.  Parsing
/// accepts any valid JSON layout of that shape; serialization always emits
/// the canonical form below with 17 significant decimal digits, so
/// serialize(parse(file)) is bit-identical on canonical files.
LinearFractionalMap parse_map_spec(const std::string& text);
LinearFractionalMap load_map_spec(const std::string& path);

std::string serialize_map_spec(const LinearFractionalMap& map);

/// Write content to path through a temp file + rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ballcomp

#endif
