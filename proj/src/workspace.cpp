#include "umk/workspace.hpp"

#include <regex>
#include <sstream>

#include "umk/error.hpp"
#include "umk/parse.hpp"

namespace umk {

const RingHandle& Workspace::ring(const std::string& name) const {
  auto it = rings.find(name);
  if (it == rings.end()) throw ParseError("no ring named '" + name + "'");
  return it->second;
}

const Matrix& Workspace::object(const std::string& name) const {
  auto it = objects.find(name);
  if (it == objects.end()) throw ParseError("no row or matrix named '" + name + "'");
  return it->second;
}

Workspace parse_workspace(std::string_view text) {
  static const std::regex ring_re(R"(ring\s+([A-Za-z_]\w*)\s*=\s*(.+))");
  static const std::regex row_re(R"(row\s+([A-Za-z_]\w*)\s+over\s+([A-Za-z_]\w*)\s*=\s*(.+))");
  static const std::regex mat_re(
      R"(mat\s+([A-Za-z_]\w*)\s+over\s+([A-Za-z_]\w*)\s+(\d+)x(\d+)\s*=\s*(.+))");
  static const std::regex num_re(R"((seed|budget)\s+(\d+))");

  Workspace ws;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("workspace line " + std::to_string(lineno) + ": " + what);
  };
  auto fresh = [&](const std::string& name) {
    if (ws.rings.count(name) || ws.objects.count(name)) fail("duplicate name '" + name + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string s = trim(line);
    if (s.empty()) continue;
    std::smatch m;
    try {
      if (std::regex_match(s, m, ring_re)) {
        fresh(m[1]);
        ws.rings.emplace(m[1], make_ring(trim(m[2].str())));
      } else if (std::regex_match(s, m, row_re)) {
        fresh(m[1]);
        ws.objects.emplace(m[1], parse_row(ws.ring(m[2]), m[3].str()));
      } else if (std::regex_match(s, m, mat_re)) {
        fresh(m[1]);
        Matrix M = parse_matrix(ws.ring(m[2]), m[5].str());
        if (M.rows() != std::stoul(m[3]) || M.cols() != std::stoul(m[4]))
          fail("'" + m[1].str() + "' is " + std::to_string(M.rows()) + "x" +
               std::to_string(M.cols()) + ", declared " + m[3].str() + "x" + m[4].str());
        ws.objects.emplace(m[1], std::move(M));
      } else if (std::regex_match(s, m, num_re)) {
        if (m[1] == "seed") ws.seed = std::stoull(m[2]);
        else ws.budget = std::stoull(m[2]);
      } else {
        fail("cannot read '" + s + "'");
      }
    } catch (const ParseError& e) {
      if (std::string(e.what()).rfind("workspace line", 0) == 0) throw;
      fail(e.what());
    }
  }
  return ws;
}

}  // namespace umk
