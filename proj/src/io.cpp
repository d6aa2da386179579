#include "steiner/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace steiner::io {

namespace {

std::string format_blocks(const std::vector<Block>& blocks) {
  std::string out;
  char line[32];
  for (const auto& b : blocks) {
    std::snprintf(line, sizeof line, "%d %d %d\n", b[0], b[1], b[2]);
    out += line;
  }
  return out;
}

std::vector<Block> parse_blocks(std::istream& in, long expected, const char* what) {
  std::vector<Block> blocks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long a, b, c;
    if (!(ls >> a >> b >> c)) throw input_error(std::string(what) + ": malformed block line");
    if (a < 0 || a >= b || b >= c || c > 0xffff) {
      throw input_error(std::string(what) + ": block points must be strictly ascending");
    }
    blocks.push_back(Block{static_cast<Point>(a), static_cast<Point>(b), static_cast<Point>(c)});
  }
  if (expected >= 0 && static_cast<long>(blocks.size()) != expected) {
    throw input_error(std::string(what) + ": block count does not match header");
  }
  if (!std::is_sorted(blocks.begin(), blocks.end())) {
    throw input_error(std::string(what) + ": blocks not in lexicographic order");
  }
  return blocks;
}

}  // namespace

std::string format_design(const TripleSystem& s) {
  std::string out = "sts v=" + std::to_string(s.v) + " b=" + std::to_string(s.blocks.size()) + "\n";
  return out + format_blocks(s.blocks);
}

TripleSystem parse_design(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  int v = 0;
  long b = -1;
  if (std::sscanf(header.c_str(), "sts v=%d b=%ld", &v, &b) != 2) {
    throw input_error("design: bad header");
  }
  TripleSystem s;
  s.v = v;
  s.blocks = parse_blocks(in, b, "design");
  for (const auto& blk : s.blocks) {
    if (blk[2] >= v) throw input_error("design: block point out of range");
  }
  return s;
}

std::string format_configuration(const Configuration& c) {
  std::string out = "cfg m=" + std::to_string(c.m) + " r=" + std::to_string(c.r) +
                    " b=" + std::to_string(c.blocks.size()) + "\n";
  return out + format_blocks(c.blocks);
}

Configuration parse_configuration(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  int m = 0, r = 0;
  long b = -1;
  if (std::sscanf(header.c_str(), "cfg m=%d r=%d b=%ld", &m, &r, &b) != 3) {
    throw input_error("configuration: bad header");
  }
  Configuration c;
  c.m = m;
  c.r = r;
  c.blocks = parse_blocks(in, b, "configuration");
  for (const auto& blk : c.blocks) {
    if (blk[2] >= m) throw input_error("configuration: block point out of range");
  }
  return c;
}

std::string to_graph6(const PackedGraph& g) {
  int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int bit = 5;
  char cur = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (g.edge(i, j)) cur |= static_cast<char>(1 << bit);
      if (--bit < 0) {
        out.push_back(cur + 63);
        bit = 5;
        cur = 0;
      }
    }
  }
  if (bit != 5) out.push_back(cur + 63);
  return out;
}

PackedGraph from_graph6(const std::string& text) {
  std::string s = text;
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  if (s.empty()) throw input_error("graph6: empty input");
  std::size_t pos = 0;
  long n;
  if (s[0] == 126) {
    if (s.size() < 4 || s[1] == 126) throw input_error("graph6: unsupported order");
    n = ((s[1] - 63L) << 12) | ((s[2] - 63L) << 6) | (s[3] - 63L);
    pos = 4;
  } else {
    n = s[0] - 63;
    pos = 1;
  }
  if (n < 0 || n > 64) throw input_error("graph6: order out of range for PackedGraph");
  PackedGraph g(static_cast<int>(n));
  int bit = 5;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (pos >= s.size()) throw input_error("graph6: truncated");
      int c = s[pos] - 63;
      if (c < 0 || c > 63) throw input_error("graph6: bad character");
      if ((c >> bit) & 1) g.add_edge(i, j);
      if (--bit < 0) {
        bit = 5;
        ++pos;
      }
    }
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot create " + path);
  out << content;
  if (!out) throw io_error("write failed for " + path);
}

void write_design(const TripleSystem& s, const std::string& path) {
  write_file(path, format_design(s));
}

TripleSystem read_design(const std::string& path) { return parse_design(read_file(path)); }

void write_configuration(const Configuration& c, const std::string& path) {
  write_file(path, format_configuration(c));
}

Configuration read_configuration(const std::string& path) {
  return parse_configuration(read_file(path));
}

}  // namespace steiner::io
