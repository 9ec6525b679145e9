// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "derivekit/similarity.hpp"

namespace derivekit {

namespace {

constexpr std::size_t kFields = 10;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string where(std::string_view origin, std::size_t line_no) {
  return std::string(origin) + ":" + std::to_string(line_no) + ": ";
}

std::size_t parse_len(std::string_view field, std::string_view origin, std::size_t line_no,
                      std::string_view column) {
  std::size_t v = 0;
  const auto* end = field.data() + field.size();
  auto [p, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || p != end || field.empty()) {
    throw DataError(where(origin, line_no) + "column " + std::string(column) +
                    " is not a non-negative integer: '" + std::string(field) + "'");
  }
  return v;
}

void check_len(std::size_t declared, const std::string& s, std::string_view origin,
               std::size_t line_no, std::string_view column) {
  const auto actual = code_point_count(s);
  if (declared != actual) {
    throw DataError(where(origin, line_no) + std::string(column) + " is " +
                    std::to_string(declared) + " but the string has " + std::to_string(actual) +
                    " characters");
  }
}

std::optional<std::string> derived_tail(const DerivationSequence& seq) {
  if (seq.records.empty()) return std::nullopt;
  try {
    return render_state(remove_index(parse_state(seq.records.back().text_str)));
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

LengthStats length_stats(const std::vector<std::size_t>& v) {
  LengthStats s;
  if (v.empty()) return s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  double total = 0;
  for (auto x : v) total += static_cast<double>(x);
  s.mean = total / static_cast<double>(v.size());
  return s;
}

void write_row(std::ostream& out, const DerivationRecord& r) {
  out << r.latex_len << '\t' << escape_field(r.latex_str) << '\t' << r.text_len << '\t'
      << escape_field(r.text_str) << '\t' << r.tree_len << '\t' << escape_field(r.tree_str) << '\t'
      << escape_field(r.action) << '\t' << escape_field(r.nsa) << '\t'
      << escape_field(r.state_type) << '\t' << escape_field(r.action_type) << '\n';
}

}  // namespace

DerivationRecord make_record(const EquationState& s, std::string action, std::string nsa,
                             StateType type, ActionCategory category) {
  DerivationRecord r;
  r.latex_str = render_state(s, RenderForm::Latex);
  r.text_str = render_state(s, RenderForm::Text);
  r.tree_str = render_state(s, RenderForm::Tree);
  r.latex_len = code_point_count(r.latex_str);
  r.text_len = code_point_count(r.text_str);
  r.tree_len = code_point_count(r.tree_str);
  r.action = std::move(action);
  r.nsa = std::move(nsa);
  r.state_type = std::string(state_type_name(type));
  r.action_type = std::string(category_name(category));
  return r;
}

std::string escape_field(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out += field[i];
      continue;
    }
    if (++i == field.size()) throw DataError("dangling backslash escape");
    switch (field[i]) {
      case '\\':
        out += '\\';
        break;
      case 't':
        out += '\t';
        break;
      case 'n':
        out += '\n';
        break;
      case 'r':
        out += '\r';
        break;
      default:
        throw DataError(std::string("unknown escape \\") + field[i]);
    }
  }
  return out;
}

DerivationSequence parse_dataset(std::string_view text, std::string_view origin) {
  DerivationSequence seq;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header_seen = false;
  bool tail_seen = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kHeader) throw DataError(where(origin, line_no) + "unexpected header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    if (tail_seen) throw DataError(where(origin, line_no) + "rows after the dummy tail row");
    const auto fields = split_tabs(line);
    if (fields.size() != kFields) {
      throw DataError(where(origin, line_no) + "expected 10 fields, found " +
                      std::to_string(fields.size()));
    }
    DerivationRecord r;
    try {
      r.latex_str = unescape_field(fields[1]);
      r.text_str = unescape_field(fields[3]);
      r.tree_str = unescape_field(fields[5]);
      r.action = unescape_field(fields[6]);
      r.nsa = unescape_field(fields[7]);
      r.state_type = unescape_field(fields[8]);
      r.action_type = unescape_field(fields[9]);
    } catch (const DataError& e) {
      throw DataError(where(origin, line_no) + e.what());
    }
    r.latex_len = parse_len(fields[0], origin, line_no, "latex_len");
    r.text_len = parse_len(fields[2], origin, line_no, "text_len");
    r.tree_len = parse_len(fields[4], origin, line_no, "tree_len");
    check_len(r.latex_len, r.latex_str, origin, line_no, "latex_len");
    check_len(r.text_len, r.text_str, origin, line_no, "text_len");
    check_len(r.tree_len, r.tree_str, origin, line_no, "tree_len");
    if (r.state_type == "dummy") {
      seq.explicit_tail = r.text_str;
      tail_seen = true;
      continue;
    }
    seq.records.push_back(std::move(r));
  }
  if (!header_seen) throw DataError(std::string(origin) + ": missing header");
  return seq;
}

DerivationSequence load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path.string());
}

std::string format_dataset(const DerivationSequence& seq) {
  std::ostringstream out;
  out << kHeader << '\n';
  for (const auto& r : seq.records) write_row(out, r);
  if (seq.explicit_tail && derived_tail(seq) != seq.explicit_tail) {
    DerivationRecord tail;
    try {
      auto s = parse_state(*seq.explicit_tail);
      tail = make_record(s, "", "None", StateType::Dummy, ActionCategory::Self);
      tail.action.clear();
      tail.action_type.clear();
    } catch (const ParseError&) {
      tail.state_type = "dummy";
    }
    tail.text_str = *seq.explicit_tail;
    tail.text_len = code_point_count(tail.text_str);
    write_row(out, tail);
  }
  return out.str();
}

void save_dataset(const DerivationSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << format_dataset(seq);
  if (!out) throw DataError("write failed for " + path.string());
}

std::string normalize_action_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '-') {
      out += '_';
    } else if (c >= 'A' && c <= 'Z') {
      out += static_cast<char>(c - 'A' + 'a');
    } else {
      out += c;
    }
  }
  if (out == "consider_knowledge_base_equation") return std::string(kConsiderKbEquation);
  return out;
}

bool is_consider_kb(std::string_view action_name) {
  return normalize_action_name(action_name) == kConsiderKbEquation;
}

DerivationSequence categorize(DerivationSequence seq) {
  auto& recs = seq.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    StateType t = StateType::Consequent;
    if (is_consider_kb(recs[i].action)) {
      t = StateType::Integrative;
    } else if (i + 1 < recs.size() && is_consider_kb(recs[i + 1].action)) {
      t = StateType::Terminal;
    }
    recs[i].state_type = std::string(state_type_name(t));
  }
  return seq;
}

std::string tail_string(const DerivationSequence& seq) {
  if (seq.explicit_tail) return *seq.explicit_tail;
  if (auto t = derived_tail(seq)) return *t;
  throw DataError("no dummy tail row and the last state cannot be parsed to derive one");
}

std::vector<std::string> state_strings(const DerivationSequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.state_count());
  out.push_back(render_state(dummy_head()));
  for (const auto& r : seq.records) out.push_back(r.text_str);
  out.push_back(tail_string(seq));
  return out;
}

std::vector<EquationState> parsed_states(const DerivationSequence& seq) {
  std::vector<EquationState> out;
  out.reserve(seq.state_count());
  out.push_back(dummy_head());
  for (std::size_t i = 0; i < seq.records.size(); ++i) {
    const auto& r = seq.records[i];
    try {
      auto s = parse_state(r.text_str);
      s.type = parse_state_type(r.state_type).value_or(StateType::Consequent);
      out.push_back(std::move(s));
    } catch (const ParseError& e) {
      throw DataError("record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  try {
    auto tail = parse_state(tail_string(seq));
    tail.type = StateType::Dummy;
    out.push_back(std::move(tail));
  } catch (const ParseError& e) {
    throw DataError(std::string("dummy tail: ") + e.what());
  }
  return out;
}

Census census(const DerivationSequence& seq) {
  Census c;
  c.records = seq.records.size();
  std::vector<std::size_t> latex;
  std::vector<std::size_t> text;
  std::vector<std::size_t> tree;
  for (const auto& r : seq.records) {
    ++c.by_state_type[r.state_type];
    ++c.cells[{r.state_type, r.action_type}];
    latex.push_back(r.latex_len);
    text.push_back(r.text_len);
    tree.push_back(r.tree_len);
  }
  c.latex = length_stats(latex);
  c.text = length_stats(text);
  c.tree = length_stats(tree);
  return c;
}

std::vector<std::string> validate(const DerivationSequence& seq) {
  std::vector<std::string> issues;
  const auto recomputed = categorize(seq);
  for (std::size_t i = 0; i < seq.records.size(); ++i) {
    const auto& r = seq.records[i];
    const std::string row = "record " + std::to_string(i + 1) + ": ";
    if (!parse_state_type(r.state_type) || r.state_type == "dummy") {
      issues.push_back(row + "unknown state_type '" + r.state_type + "'");
    } else if (r.state_type != recomputed.records[i].state_type) {
      issues.push_back(row + "state_type '" + r.state_type + "' but the action sequence implies '" +
                       recomputed.records[i].state_type + "'");
    }
    const auto cat = parse_category(r.action_type);
    if (!cat) {
      issues.push_back(row + "unknown action_type '" + r.action_type + "'");
    } else if (const auto* a = find_action(normalize_action_name(r.action));
               a != nullptr && a->category != *cat) {
      issues.push_back(row + "action '" + r.action + "' is " +
                       std::string(category_name(a->category)) + ", not " + r.action_type);
    }
  }
  return issues;
}

}  // namespace derivekit
