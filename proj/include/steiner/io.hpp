#pragma once

#include <iosfwd>
#include <string>

#include "steiner/types.hpp"

namespace steiner::io {

// Design file: `sts v=<v> b=<count>` then one block per line as three
// ascending space-separated decimals, blocks in lexicographic order, LF
// line endings. Configuration files are identical with header
// `cfg m=<m> r=<r> b=<count>`.

std::string format_design(const TripleSystem& s);
TripleSystem parse_design(const std::string& text);
void write_design(const TripleSystem& s, const std::string& path);
TripleSystem read_design(const std::string& path);

std::string format_configuration(const Configuration& c);
Configuration parse_configuration(const std::string& text);
void write_configuration(const Configuration& c, const std::string& path);
Configuration read_configuration(const std::string& path);

// Standard graph6 encoding (without trailing newline).
std::string to_graph6(const PackedGraph& g);
PackedGraph from_graph6(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace steiner::io
