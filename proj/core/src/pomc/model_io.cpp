#include "fairmon/pomc/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include "fairmon/util/format.hpp"

namespace fairmon::pomc {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '#') {
      ++i;
    }
    fields.emplace_back(line.substr(start, i - start));
  }
  return fields;
}

int parse_int(const std::string& text, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ModelError("expected an integer, got '" + text + "'", line);
  }
  return value;
}

double parse_prob(const std::string& text, int line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ModelError("expected a number, got '" + text + "'", line);
  }
  return value;
}

}  // namespace

PomcModel load_model(std::string_view text) {
  PomcModel model;
  bool saw_states = false;
  bool saw_alphabet = false;
  bool saw_init = false;
  std::vector<int> labels;  // -1 = unset

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    const std::string& head = fields[0];

    if (head == "states") {
      if (fields.size() != 2) throw ModelError("states takes one count", line_no);
      if (saw_states) throw ModelError("duplicate states line", line_no);
      const int k = parse_int(fields[1], line_no);
      if (k < 1) throw ModelError("state count must be positive", line_no);
      model.state_count = k;
      model.rows.resize(k);
      labels.assign(k, -1);
      saw_states = true;
    } else if (head == "alphabet") {
      if (saw_alphabet) throw ModelError("duplicate alphabet line", line_no);
      if (fields.size() < 2) throw ModelError("alphabet needs at least one token", line_no);
      std::vector<std::string> tokens(fields.begin() + 1, fields.end());
      for (const auto& tok : tokens) {
        if (std::count(tokens.begin(), tokens.end(), tok) != 1) {
          throw ModelError("duplicate alphabet token '" + tok + "'", line_no);
        }
      }
      model.alphabet = bse::Alphabet(std::move(tokens));
      saw_alphabet = true;
    } else if (head == "t") {
      if (!saw_states) throw ModelError("t before states", line_no);
      if (fields.size() != 4) throw ModelError("t takes from, to, prob", line_no);
      const int from = parse_int(fields[1], line_no);
      const int to = parse_int(fields[2], line_no);
      const double p = parse_prob(fields[3], line_no);
      if (from < 0 || from >= model.state_count || to < 0 ||
          to >= model.state_count) {
        throw ModelError("state index out of range", line_no);
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ModelError("transition probability must be in [0, 1]", line_no);
      }
      for (const auto& [existing, _] : model.rows[from]) {
        if (existing == to) {
          throw ModelError("duplicate transition", line_no);
        }
      }
      if (p > 0.0) model.rows[from].emplace_back(to, p);
    } else if (head == "l") {
      if (!saw_states) throw ModelError("l before states", line_no);
      if (!saw_alphabet) throw ModelError("l before alphabet", line_no);
      if (fields.size() != 3) throw ModelError("l takes state, token", line_no);
      const int state = parse_int(fields[1], line_no);
      if (state < 0 || state >= model.state_count) {
        throw ModelError("state index out of range", line_no);
      }
      auto sym = model.alphabet.find(fields[2]);
      if (!sym) {
        throw ModelError("unknown token '" + fields[2] + "'", line_no);
      }
      if (labels[state] != -1) {
        throw ModelError("state labelled twice", line_no);
      }
      labels[state] = *sym;
    } else if (head == "init") {
      if (!saw_states) throw ModelError("init before states", line_no);
      if (fields.size() != 3) throw ModelError("init takes state, prob", line_no);
      const int state = parse_int(fields[1], line_no);
      const double p = parse_prob(fields[2], line_no);
      if (state < 0 || state >= model.state_count) {
        throw ModelError("state index out of range", line_no);
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ModelError("initial probability must be in [0, 1]", line_no);
      }
      if (!saw_init) {
        model.init.assign(model.state_count, 0.0);
        saw_init = true;
      }
      model.init[state] = p;
    } else {
      throw ModelError("unknown directive '" + head + "'", line_no);
    }
    if (pos > text.size()) break;
  }

  if (!saw_states) throw ModelError("missing states line");
  if (!saw_alphabet) throw ModelError("missing alphabet line");
  for (int q = 0; q < model.state_count; ++q) {
    if (labels[q] == -1) {
      throw ModelError("state " + std::to_string(q) + " has no label");
    }
  }
  model.labels.assign(labels.begin(), labels.end());
  for (auto& row : model.rows) std::sort(row.begin(), row.end());
  model.check();
  return model;
}

std::string print_model(const PomcModel& model) {
  std::ostringstream out;
  out << "states " << model.state_count << "\n";
  out << "alphabet";
  for (const auto& tok : model.alphabet.tokens()) out << ' ' << tok;
  out << "\n";
  for (int q = 0; q < model.state_count; ++q) {
    for (const auto& [to, p] : model.rows[q]) {
      out << "t " << q << ' ' << to << ' ' << util::format_double(p) << "\n";
    }
  }
  for (int q = 0; q < model.state_count; ++q) {
    out << "l " << q << ' ' << model.alphabet.token(model.labels[q]) << "\n";
  }
  for (size_t q = 0; q < model.init.size(); ++q) {
    if (model.init[q] != 0.0) {
      out << "init " << q << ' ' << util::format_double(model.init[q]) << "\n";
    }
  }
  return out.str();
}

}  // namespace fairmon::pomc
