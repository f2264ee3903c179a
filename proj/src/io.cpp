#include "balpairs/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace balpairs {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '<' || c == ':' || c == '#') return false;
  return true;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

Poset parse_poset(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, ElementId, std::less<>> ids;
  std::vector<Relation> relations;

  auto intern = [&](std::string_view name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<ElementId>(names.size());
    names.emplace_back(name);
    ids.emplace(std::string(name), id);
    return id;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("elements:")) {
      std::istringstream in{std::string(line.substr(9))};
      std::string name;
      while (in >> name) {
        if (!valid_name(name)) throw ParseError(line_no, "bad element name '" + name + "'");
        if (ids.count(name)) throw ParseError(line_no, "element '" + name + "' declared twice");
        intern(name);
      }
      continue;
    }

    const auto lt = line.find('<');
    if (lt == std::string_view::npos) throw ParseError(line_no, "expected 'a < b'");
    const auto lhs = trim(line.substr(0, lt));
    const auto rhs = trim(line.substr(lt + 1));
    if (!valid_name(lhs) || !valid_name(rhs))
      throw ParseError(line_no, "expected 'a < b' with single names");
    // sequenced so ids follow first use left to right
    const ElementId a = intern(lhs);
    const ElementId b = intern(rhs);
    relations.emplace_back(a, b);
  }
  return Poset::from_relations(names.size(), relations, names);
}

Poset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poset(buf.str());
}

std::string serialize(const Poset& p) {
  std::ostringstream os;
  os << "elements:";
  for (ElementId x = 0; x < p.size(); ++x) os << ' ' << p.label(x);
  os << '\n';
  for (const auto& [a, b] : p.cover_relations()) os << p.label(a) << " < " << p.label(b) << '\n';
  return os.str();
}

std::string to_dot(const Poset& p) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (ElementId x = 0; x < p.size(); ++x)
    os << "  n" << x << " [label=" << dot_quote(p.label(x)) << "];\n";
  for (const auto& [a, b] : p.cover_relations()) os << "  n" << a << " -> n" << b << ";\n";
  const auto h = heights(p);
  std::map<std::size_t, std::vector<ElementId>> ranks;
  for (ElementId x = 0; x < p.size(); ++x) ranks[h[x]].push_back(x);
  for (const auto& [rank, members] : ranks) {
    os << "  { rank=same;";
    for (auto x : members) os << " n" << x << ';';
    os << " }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace balpairs
