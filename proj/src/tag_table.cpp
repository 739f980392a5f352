#include "ccgboot/tag_table.hpp"

#include <fstream>
#include <sstream>

#include "ccgboot/error.hpp"
#include "default_tags.hpp"

namespace ccgboot {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.emplace_back(s.substr(start, p == std::string_view::npos ? s.npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view builtin_tag_table_text() { return kBuiltinTagTable; }

const TagTable& TagTable::builtin() {
  static const TagTable table = parse(kBuiltinTagTable);
  return table;
}

TagTable TagTable::parse(std::string_view text) {
  TagTable table;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3)
      throw DataError("tag table line " + std::to_string(line_no) + ": expected 3 tab-separated columns");
    TagEntry entry;
    entry.tag = std::string(trim(cols[0]));
    entry.shell_marker = std::string(trim(cols[1]));
    std::string_view spec = trim(cols[2]);
    if (spec == "not-considered") {
      entry.rule = TypeRule::NotConsidered;
    } else if (spec == "handled-separately") {
      entry.rule = TypeRule::HandledSeparately;
    } else if (spec == "prep") {
      entry.rule = TypeRule::Prep;
    } else {
      for (const std::string& t : split(spec, ';')) {
        try {
          entry.types.push_back(types::parse_semtype(trim(t)));
        } catch (const ParseError& e) {
          throw DataError("tag table line " + std::to_string(line_no) + ": " + e.what());
        }
      }
    }
    if (entry.tag.empty() || entry.shell_marker.empty())
      throw DataError("tag table line " + std::to_string(line_no) + ": empty tag or marker");
    if (!table.entries_.emplace(entry.tag, entry).second)
      throw DataError("tag table line " + std::to_string(line_no) + ": duplicate tag " + entry.tag);
  }
  return table;
}

TagTable TagTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tag table " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool TagTable::contains(std::string_view tag) const { return entries_.find(tag) != entries_.end(); }

const TagEntry& TagTable::at(std::string_view tag) const {
  auto it = entries_.find(tag);
  if (it == entries_.end()) throw DataError("unknown tag '" + std::string(tag) + "'");
  return it->second;
}

}  // namespace ccgboot
