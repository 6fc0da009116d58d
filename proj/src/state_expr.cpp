#include "entscope/state_expr.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "entscope/errors.hpp"
#include "entscope/families.hpp"

namespace entscope {

namespace {

using nlohmann::json;

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

std::string_view read_ident(Cursor& cur) {
  cur.skip_ws();
  const std::size_t start = cur.pos;
  while (cur.pos < cur.text.size() &&
         (std::isalnum(static_cast<unsigned char>(cur.text[cur.pos])) ||
          cur.text[cur.pos] == '_')) {
    ++cur.pos;
  }
  return cur.text.substr(start, cur.pos - start);
}

std::vector<std::string> read_args(Cursor& cur) {
  if (!cur.consume('(')) throw ParseError("expected '('", cur.pos);
  std::vector<std::string> args;
  std::string current;
  while (cur.pos < cur.text.size()) {
    const char c = cur.text[cur.pos];
    if (c == ')') {
      ++cur.pos;
      args.push_back(current);
      return args;
    }
    if (c == ',') {
      args.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
    ++cur.pos;
  }
  throw ParseError("unterminated argument list", cur.pos);
}

std::int64_t parse_int(const std::string& tok, std::size_t pos) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError("expected integer, got '" + tok + "'", pos);
  }
  return v;
}

PureState state_from_json(const json& j, bool normalize,
                          const std::string& path) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("amps")) {
    throw FileError("state file " + path + " needs {\"dims\", \"amps\"}");
  }
  std::vector<std::int64_t> dims = j.at("dims").get<std::vector<std::int64_t>>();
  const auto& amps = j.at("amps");
  Eigen::VectorXcd v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& e = amps.at(i);
    if (!e.is_array() || e.size() != 2) {
      throw FileError("amplitude " + std::to_string(i) + " in " + path +
                      " must be [re, im]");
    }
    v[static_cast<Eigen::Index>(i)] =
        cd{e.at(0).get<double>(), e.at(1).get<double>()};
  }
  return PureState(std::move(dims), std::move(v), normalize);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FileError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string read_path(Cursor& cur) {
  cur.skip_ws();
  const std::size_t start = cur.pos;
  while (cur.pos < cur.text.size() && cur.text[cur.pos] != '*' &&
         cur.text[cur.pos] != '+') {
    ++cur.pos;
  }
  std::string path(cur.text.substr(start, cur.pos - start));
  while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) {
    path.pop_back();
  }
  if (path.empty()) throw ParseError("empty file path", start);
  return path;
}

PureState parse_term(Cursor& cur, bool normalize) {
  cur.skip_ws();
  const std::size_t start = cur.pos;
  if (cur.text.substr(cur.pos, 5) == "file:") {
    cur.pos += 5;
    return load_state_file(read_path(cur), normalize);
  }
  const std::string_view name = read_ident(cur);
  if (name == "ghz") {
    const auto args = read_args(cur);
    if (args.size() != 1) throw ParseError("ghz takes one argument", start);
    return ghz_state(static_cast<int>(parse_int(args[0], start)));
  }
  if (name == "w") {
    const auto args = read_args(cur);
    if (args.size() != 1) throw ParseError("w takes one argument", start);
    return w_state(static_cast<int>(parse_int(args[0], start)));
  }
  if (name == "bell") {
    const auto args = read_args(cur);
    if (args.size() != 1) throw ParseError("bell takes one argument", start);
    if (args[0] == "psip") return bell_state(BellKind::psi_plus);
    if (args[0] == "psim") return bell_state(BellKind::psi_minus);
    if (args[0] == "phip") return bell_state(BellKind::phi_plus);
    if (args[0] == "phim") return bell_state(BellKind::phi_minus);
    throw ParseError("unknown Bell state '" + args[0] +
                     "' (psip|psim|phip|phim)", start);
  }
  if (name == "ket") {
    const auto args = read_args(cur);
    if (args.size() != 1) throw ParseError("ket takes one argument", start);
    return ket(args[0]);
  }
  if (name == "rand") {
    const auto args = read_args(cur);
    if (args.size() < 2) {
      throw ParseError("rand needs dims..., seed", start);
    }
    std::vector<std::int64_t> dims;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      dims.push_back(parse_int(args[i], start));
    }
    const std::uint64_t seed =
        static_cast<std::uint64_t>(parse_int(args.back(), start));
    return random_pure_state(std::move(dims), seed);
  }
  throw ParseError("unknown state atom '" + std::string(name) + "'", start);
}

PureState parse_expr(Cursor& cur, bool normalize) {
  PureState state = parse_term(cur, normalize);
  while (cur.peek() == '*') {
    cur.consume('*');
    state = tensor_product(state, parse_term(cur, normalize));
  }
  return state;
}

std::optional<double> try_leading_number(Cursor& cur) {
  cur.skip_ws();
  const char c = cur.peek();
  if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.')) {
    return std::nullopt;
  }
  const char* begin = cur.text.data() + cur.pos;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) return std::nullopt;
  cur.pos += static_cast<std::size_t>(end - begin);
  return v;
}

}  // namespace

PureState parse_state(std::string_view spec, bool normalize) {
  Cursor cur{spec};
  PureState state = parse_expr(cur, normalize);
  if (!cur.done()) {
    throw ParseError("unexpected trailing input", cur.pos);
  }
  return state;
}

DensityMatrix parse_density(std::string_view spec, bool normalize) {
  Cursor probe{spec};
  probe.skip_ws();
  if (probe.text.substr(probe.pos, 5) == "file:") {
    Cursor cur{spec};
    cur.pos = probe.pos + 5;
    const std::string path = read_path(cur);
    if (!cur.done()) throw ParseError("unexpected trailing input", cur.pos);
    const json j = load_json_file(path);
    if (j.contains("matrix")) {
      std::vector<std::int64_t> dims =
          j.at("dims").get<std::vector<std::int64_t>>();
      const auto& rows = j.at("matrix");
      Eigen::MatrixXcd m(rows.size(), rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows.at(r);
        if (row.size() != rows.size()) {
          throw FileError("density matrix in " + path + " is not square");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
          const auto& e = row.at(c);
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              cd{e.at(0).get<double>(), e.at(1).get<double>()};
        }
      }
      return DensityMatrix(std::move(dims), std::move(m));
    }
    return DensityMatrix::from_pure(state_from_json(j, normalize, path));
  }

  // Mixture "p1 * SPEC1 + p2 * SPEC2 ..." or a plain pure spec.
  std::vector<double> probs;
  std::vector<PureState> states;
  Cursor cur{spec};
  while (true) {
    auto prob = try_leading_number(cur);
    if (prob) {
      if (!cur.consume('*')) {
        throw ParseError("expected '*' after mixture weight", cur.pos);
      }
    } else if (!probs.empty()) {
      throw ParseError("expected mixture weight", cur.pos);
    }
    states.push_back(parse_expr(cur, normalize));
    probs.push_back(prob.value_or(1.0));
    if (cur.done()) break;
    if (!cur.consume('+')) {
      throw ParseError("expected '+' between mixture terms", cur.pos);
    }
  }
  return DensityMatrix::mixture(probs, states);
}

PureState load_state_file(const std::string& path, bool normalize) {
  return state_from_json(load_json_file(path), normalize, path);
}

void save_state_file(const PureState& psi, const std::string& path) {
  json amps = json::array();
  for (std::int64_t i = 0; i < psi.dim(); ++i) {
    amps.push_back({psi.amp(i).real(), psi.amp(i).imag()});
  }
  json j{{"dims", psi.dims()}, {"amps", std::move(amps)}};
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace entscope
