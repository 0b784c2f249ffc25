#include "wsat/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>

namespace wsat {

namespace {

struct CommentKeys {
  std::optional<int> k, n, d, dprime;
  std::optional<double> p, c;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> model;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// from_chars for double is inconsistently available; go through strtod.
std::optional<double> parse_double(std::string_view s) {
  std::string buf(s);
  char* end = nullptr;
  const double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty()) return std::nullopt;
  return value;
}

void read_comment(std::string_view line, int line_no, CommentKeys& keys) {
  std::string_view body = trim(line.substr(1));
  const size_t eq = body.find('=');
  if (eq == std::string_view::npos) return; // free-form comment
  const std::string_view key = trim(body.substr(0, eq));
  const std::string_view value = trim(body.substr(eq + 1));
  auto bad = [&](const char* what) {
    throw ParseError(std::string("bad value for comment key ") + what, line_no);
  };
  if (key == "k") {
    keys.k = parse_number<int>(value);
    if (!keys.k) bad("k");
  } else if (key == "n") {
    keys.n = parse_number<int>(value);
    if (!keys.n) bad("n");
  } else if (key == "d") {
    keys.d = parse_number<int>(value);
    if (!keys.d) bad("d");
  } else if (key == "dprime") {
    keys.dprime = parse_number<int>(value);
    if (!keys.dprime) bad("dprime");
  } else if (key == "p") {
    keys.p = parse_double(value);
    if (!keys.p) bad("p");
  } else if (key == "c") {
    keys.c = parse_double(value);
    if (!keys.c) bad("c");
  } else if (key == "seed") {
    keys.seed = parse_number<std::uint64_t>(value);
    if (!keys.seed) bad("seed");
  } else if (key == "model") {
    keys.model = std::string(value);
  }
  // unrecognized keys are plain comments
}

std::string format_double(double value) {
  // %.17g round-trips IEEE doubles exactly, keeping parse(serialize) an identity
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

} // namespace

Instance parse_dimacs(std::string_view text, const ParseOptions& options) {
  CommentKeys keys;
  int n = -1;
  int declared_clauses = -1;
  std::vector<Clause> clauses;

  std::vector<int> current;
  bool clause_open = false;

  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == 'c') {
      if (line.size() > 1 && !std::isspace(static_cast<unsigned char>(line[1])))
        continue; // tokens like "cnf" never start a clause line; treat as comment
      read_comment(line, line_no, keys);
      continue;
    }
    if (line.front() == 'p') {
      if (n >= 0) throw ParseError("duplicate header", line_no);
      std::istringstream header{std::string(line)};
      std::string tag, fmt;
      long long hn = -1, hm = -1;
      header >> tag >> fmt >> hn >> hm;
      if (header.fail() || tag != "p" || fmt != "cnf" || hn < 0 || hm < 0)
        throw ParseError("malformed header, expected 'p cnf <n> <m>'", line_no);
      std::string extra;
      if (header >> extra) throw ParseError("trailing tokens after header", line_no);
      n = static_cast<int>(hn);
      declared_clauses = static_cast<int>(hm);
      continue;
    }
    if (n < 0) throw ParseError("clause data before the 'p cnf' header", line_no);

    // whitespace-separated integers; 0 closes a clause
    std::istringstream body{std::string(line)};
    long long code;
    while (body >> code) {
      if (code == 0) {
        if (static_cast<int>(clauses.size()) == declared_clauses)
          throw ParseError("more clauses than the header declared", line_no);
        try {
          clauses.push_back(clause_from_dimacs(current));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), line_no);
        }
        current.clear();
        clause_open = false;
      } else {
        const long long mag = code < 0 ? -code : code;
        if (mag > n)
          throw ParseError("literal " + std::to_string(code) +
                               " out of range for n=" + std::to_string(n),
                           line_no);
        current.push_back(static_cast<int>(code));
        clause_open = true;
      }
    }
    if (!body.eof())
      throw ParseError("clause line contains a non-integer token", line_no);
  }

  if (n < 0) throw ParseError("missing 'p cnf' header", line_no);
  if (clause_open) throw ParseError("last clause is not 0-terminated", line_no);
  if (static_cast<int>(clauses.size()) != declared_clauses)
    throw ParseError("header declared " + std::to_string(declared_clauses) +
                         " clauses but " + std::to_string(clauses.size()) +
                         " were read",
                     line_no);

  if (options.strict) {
    for (size_t i = 0; i < clauses.size(); ++i) {
      if (keys.d && clauses[i].size() != *keys.d)
        throw ParseError("clause " + std::to_string(i + 1) + " has arity " +
                             std::to_string(clauses[i].size()) +
                             ", declared d=" + std::to_string(*keys.d),
                         line_no);
      if (keys.dprime && clauses[i].negated_count() < *keys.dprime)
        throw ParseError("clause " + std::to_string(i + 1) + " has fewer than " +
                             std::to_string(*keys.dprime) + " negated literals",
                         line_no);
    }
  }

  Instance instance;
  instance.formula.n = n;
  instance.formula.clauses = std::move(clauses);
  if (keys.k) {
    if (*keys.k < 0 || *keys.k > n)
      throw ParseError("weight target k out of [0, n]", line_no);
    instance.weight_target = *keys.k;
  }
  if (keys.d && keys.dprime && keys.seed && (keys.p || keys.c)) {
    // comment n, when present, must not contradict the header
    if (keys.n && *keys.n != n)
      throw ParseError("comment n contradicts the header", line_no);
    const int k = keys.k.value_or(0);
    try {
      instance.params =
          keys.c ? params_with_c(n, *keys.d, *keys.dprime, k, *keys.c, *keys.seed)
                 : params_with_p(n, *keys.d, *keys.dprime, k, *keys.p, *keys.seed);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
    if (keys.p && keys.c) instance.params->p = *keys.p; // honor both when given
  }
  return instance;
}

Instance parse_dimacs(std::istream& in, const ParseOptions& options) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(std::string_view(buffer.str()), options);
}

std::string serialize_dimacs(const Instance& instance) {
  std::string out;
  out += "c model=wdsat-v1\n";
  if (instance.weight_target)
    out += "c k=" + std::to_string(*instance.weight_target) + "\n";
  if (instance.params) {
    const RandomModelParams& params = *instance.params;
    out += "c d=" + std::to_string(params.d) + "\n";
    out += "c dprime=" + std::to_string(params.dprime) + "\n";
    if (params.c_authoritative)
      out += "c c=" + format_double(params.c) + "\n";
    else
      out += "c p=" + format_double(params.p) + "\n";
    out += "c seed=" + std::to_string(params.seed) + "\n";
  }
  out += "p cnf " + std::to_string(instance.formula.n) + " " +
         std::to_string(instance.formula.clause_count()) + "\n";
  for (const Clause& clause : instance.formula.clauses) {
    for (const Lit& lit : clause.lits) {
      out += std::to_string(lit.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

} // namespace wsat
