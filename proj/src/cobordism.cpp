#include "grasstqft/cobordism.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "grasstqft/detail/parallel.hpp"
#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

template <class T>
CobordismPtr make(T node) {
  return std::make_shared<const CobordismExpr>(CobordismExpr{std::move(node)});
}

class CobordismParser {
 public:
  explicit CobordismParser(std::string_view text) : text_(text) {}

  CobordismPtr parse() {
    CobordismPtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  int integer(const char* what, bool allow_sign) {
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail(std::string("expected ") + what);
    }
    if (pos_ - digits > 6) {
      pos_ = start;
      fail(std::string(what) + " is too large");
    }
    if (negative) {
      pos_ = start;
      fail(std::string(what) + " must be nonnegative");
    }
    return std::stoi(std::string(text_.substr(digits, pos_ - digits)));
  }

  CobordismPtr expr() {
    CobordismPtr acc = term();
    while (accept(".")) acc = make(cob::Compose{acc, term()});
    return acc;
  }

  CobordismPtr term() {
    CobordismPtr acc = factor();
    while (accept("*")) acc = make(cob::Tensor{acc, factor()});
    return acc;
  }

  CobordismPtr factor() {
    skip_ws();
    if (accept("(")) {
      CobordismPtr inner = expr();
      expect(")");
      return inner;
    }
    if (accept("W(")) {
      const int g = integer("genus", true);
      expect(";");
      const int s = integer("input count", true);
      expect("->");
      const int t = integer("output count", true);
      expect(")");
      return make(cob::Atom{g, s, t});
    }
    if (accept("id")) {
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        return make(cob::Identity{integer("circle count", false)});
      }
      return make(cob::Identity{1});
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_compose(const CobordismExpr& e) { return std::holds_alternative<cob::Compose>(e.node); }
bool is_tensor(const CobordismExpr& e) { return std::holds_alternative<cob::Tensor>(e.node); }

void print_into(std::ostringstream& os, const CobordismExpr& e) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, cob::Atom>) {
          os << "W(" << node.g << ";" << node.s << "->" << node.t << ")";
        } else if constexpr (std::is_same_v<T, cob::Identity>) {
          os << "id";
          if (node.n != 1) os << "^" << node.n;
        } else if constexpr (std::is_same_v<T, cob::Compose>) {
          print_into(os, *node.lhs);
          os << " . ";
          const bool wrap = is_compose(*node.rhs);
          if (wrap) os << "(";
          print_into(os, *node.rhs);
          if (wrap) os << ")";
        } else {
          const bool wrap_l = is_compose(*node.lhs);
          const bool wrap_r = is_compose(*node.rhs) || is_tensor(*node.rhs);
          if (wrap_l) os << "(";
          print_into(os, *node.lhs);
          if (wrap_l) os << ")";
          os << " * ";
          if (wrap_r) os << "(";
          print_into(os, *node.rhs);
          if (wrap_r) os << ")";
        }
      },
      e.node);
}

struct Envelope {
  std::size_t dim;  // C(r+k, r)
};

std::size_t power(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

RationalMatrix atom_matrix(const cob::Atom& a, const TheoryParams& theory, const ExecOptions& opts) {
  const auto basis = enumerate_basis(theory.r, theory.k);
  const auto ins = cartesian_power(basis, a.s), outs = cartesian_power(basis, a.t);
  const std::size_t cols = ins.size(), rows = outs.size();
  // Parallelism goes to the entries; each entry's own sum runs inline.
  const auto values = detail::parallel_map<Integer>(
      rows * cols, [&](std::uint64_t i) { return matrix_element({a.g, ins[i % cols], outs[i / cols], theory}); },
      opts.workers);
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.at(i / cols, i % cols) = values[i];
  return m;
}

RationalMatrix eval(const CobordismExpr& e, const TheoryParams& theory, const ExecOptions& opts, std::size_t dim) {
  const auto [s, t] = boundary_type(e);
  if (s + t > 4) {
    throw OutOfRegime("subexpression " + print_cobordism(e) + " has " + std::to_string(s + t) +
                      " boundary circles; full-matrix evaluation supports at most 4");
  }
  return std::visit(
      [&](const auto& node) -> RationalMatrix {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, cob::Atom>) {
          return atom_matrix(node, theory, opts);
        } else if constexpr (std::is_same_v<T, cob::Identity>) {
          return RationalMatrix::identity(power(dim, node.n));
        } else if constexpr (std::is_same_v<T, cob::Compose>) {
          return eval(*node.rhs, theory, opts, dim) * eval(*node.lhs, theory, opts, dim);
        } else {
          return kron(eval(*node.lhs, theory, opts, dim), eval(*node.rhs, theory, opts, dim));
        }
      },
      e.node);
}

// Union-find over surface pieces; each piece carries its Euler characteristic.
struct Pieces {
  std::vector<int> parent;
  std::vector<int> chi;

  int add(int euler) {
    parent.push_back(static_cast<int>(parent.size()));
    chi.push_back(euler);
    return parent.back();
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

struct Wires {
  std::vector<int> in, out;  // piece owning each boundary circle
};

Wires glue(const CobordismExpr& e, Pieces& pieces) {
  return std::visit(
      [&](const auto& node) -> Wires {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, cob::Atom>) {
          const int p = pieces.add(2 - 2 * node.g - node.s - node.t);
          return {std::vector<int>(static_cast<std::size_t>(node.s), p), std::vector<int>(static_cast<std::size_t>(node.t), p)};
        } else if constexpr (std::is_same_v<T, cob::Identity>) {
          Wires w;
          for (int i = 0; i < node.n; ++i) {
            const int p = pieces.add(0);
            w.in.push_back(p);
            w.out.push_back(p);
          }
          return w;
        } else if constexpr (std::is_same_v<T, cob::Compose>) {
          Wires a = glue(*node.lhs, pieces), b = glue(*node.rhs, pieces);
          if (a.out.size() != b.in.size()) {
            throw TypeError("cannot compose: " + std::to_string(a.out.size()) + " outgoing circles into " +
                            std::to_string(b.in.size()) + " incoming");
          }
          for (std::size_t i = 0; i < a.out.size(); ++i) pieces.unite(a.out[i], b.in[i]);
          return {std::move(a.in), std::move(b.out)};
        } else {
          Wires a = glue(*node.lhs, pieces), b = glue(*node.rhs, pieces);
          a.in.insert(a.in.end(), b.in.begin(), b.in.end());
          a.out.insert(a.out.end(), b.out.begin(), b.out.end());
          return a;
        }
      },
      e.node);
}

// Components in the order their boundary blocks appear; empty if some
// component's circles are not contiguous.
std::vector<int> block_order(const std::vector<int>& owners, bool& contiguous) {
  std::vector<int> order;
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (i > 0 && owners[i] == owners[i - 1]) continue;
    if (std::find(order.begin(), order.end(), owners[i]) != order.end()) contiguous = false;
    order.push_back(owners[i]);
  }
  return order;
}

}  // namespace

bool operator==(const CobordismExpr& a, const CobordismExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, cob::Atom>) {
          return x.g == y.g && x.s == y.s && x.t == y.t;
        } else if constexpr (std::is_same_v<T, cob::Identity>) {
          return x.n == y.n;
        } else {
          return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        }
      },
      a.node);
}

CobordismPtr parse_cobordism(std::string_view text) { return CobordismParser(text).parse(); }

std::string print_cobordism(const CobordismExpr& e) {
  std::ostringstream os;
  print_into(os, e);
  return os.str();
}

std::pair<int, int> boundary_type(const CobordismExpr& e) {
  return std::visit(
      [&](const auto& node) -> std::pair<int, int> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, cob::Atom>) {
          return {node.s, node.t};
        } else if constexpr (std::is_same_v<T, cob::Identity>) {
          return {node.n, node.n};
        } else if constexpr (std::is_same_v<T, cob::Compose>) {
          const auto a = boundary_type(*node.lhs), b = boundary_type(*node.rhs);
          if (a.second != b.first) {
            throw TypeError("ill-typed composition " + print_cobordism(*node.lhs) + " . " + print_cobordism(*node.rhs) +
                            ": " + std::to_string(a.second) + " != " + std::to_string(b.first));
          }
          return {a.first, b.second};
        } else {
          const auto a = boundary_type(*node.lhs), b = boundary_type(*node.rhs);
          return {a.first + b.first, a.second + b.second};
        }
      },
      e.node);
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw InternalError("matrix shapes do not compose");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Rational& x = a.at(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += x * b.at(l, j);
    }
  return out;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      for (std::size_t p = 0; p < b.rows_; ++p)
        for (std::size_t q = 0; q < b.cols_; ++q) out.at(i * b.rows_ + p, j * b.cols_ + q) = a.at(i, j) * b.at(p, q);
  return out;
}

json RationalMatrix::to_json() const {
  json rows = json::array();
  for (std::size_t i = 0; i < rows_; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < cols_; ++j) row.push_back(to_string(at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string RationalMatrix::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << '"' << to_string(at(i, j)) << '"';
    os << "\r\n";
  }
  return os.str();
}

RationalMatrix evaluate_cobordism(const CobordismExpr& e, const TheoryParams& theory, const ExecOptions& opts) {
  boundary_type(e);
  if (theory.n() > 5) {
    throw OutOfRegime("full-matrix cobordism evaluation supports r + k <= 5, got " + std::to_string(theory.n()));
  }
  const std::size_t dim = enumerate_basis(theory.r, theory.k).size();
  return eval(e, theory, opts, dim);
}

std::vector<SurfaceComponent> surface_components(const CobordismExpr& e) {
  boundary_type(e);
  Pieces pieces;
  const Wires w = glue(e, pieces);
  std::map<int, SurfaceComponent> by_root;
  std::map<int, int> chi;
  std::vector<int> order;
  auto touch = [&](int root) {
    if (!by_root.count(root)) {
      by_root[root];
      order.push_back(root);
    }
  };
  for (std::size_t i = 0; i < w.in.size(); ++i) {
    const int root = pieces.find(w.in[i]);
    touch(root);
    by_root[root].inputs.push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < w.out.size(); ++i) {
    const int root = pieces.find(w.out[i]);
    touch(root);
    by_root[root].outputs.push_back(static_cast<int>(i));
  }
  for (std::size_t p = 0; p < pieces.parent.size(); ++p) {
    const int root = pieces.find(static_cast<int>(p));
    touch(root);
    chi[root] += pieces.chi[p];
  }
  std::vector<SurfaceComponent> out;
  for (int root : order) {
    SurfaceComponent c = by_root[root];
    const int b = static_cast<int>(c.inputs.size() + c.outputs.size());
    const int twice_genus = 2 - chi[root] - b;
    if (twice_genus < 0 || twice_genus % 2 != 0) throw InternalError("inconsistent Euler characteristic in gluing");
    c.genus = twice_genus / 2;
    out.push_back(std::move(c));
  }
  return out;
}

CobordismPtr normalize_cobordism(const CobordismExpr& e) {
  const auto comps = surface_components(e);
  const auto [s, t] = boundary_type(e);
  std::vector<int> in_owner(static_cast<std::size_t>(s)), out_owner(static_cast<std::size_t>(t));
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int i : comps[c].inputs) in_owner[static_cast<std::size_t>(i)] = static_cast<int>(c);
    for (int o : comps[c].outputs) out_owner[static_cast<std::size_t>(o)] = static_cast<int>(c);
  }
  bool contiguous = true;
  const auto in_order = block_order(in_owner, contiguous), out_order = block_order(out_owner, contiguous);
  if (!contiguous) {
    throw DomainError("expression " + print_cobordism(e) +
                      " does not normalize to an ordered disjoint union (a component's circles are not adjacent)");
  }
  // Merge the two block orders; components with circles on both sides must agree.
  std::vector<int> merged;
  std::size_t i = 0, j = 0;
  auto has_in = [&](int c) { return !comps[static_cast<std::size_t>(c)].inputs.empty(); };
  auto has_out = [&](int c) { return !comps[static_cast<std::size_t>(c)].outputs.empty(); };
  while (i < in_order.size() || j < out_order.size()) {
    if (i < in_order.size() && !has_out(in_order[i])) {
      merged.push_back(in_order[i++]);
    } else if (j < out_order.size() && !has_in(out_order[j])) {
      merged.push_back(out_order[j++]);
    } else if (i < in_order.size() && j < out_order.size() && in_order[i] == out_order[j]) {
      merged.push_back(in_order[i++]);
      ++j;
    } else {
      throw DomainError("expression " + print_cobordism(e) +
                        " does not normalize to an ordered disjoint union (components cross)");
    }
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].inputs.empty() && comps[c].outputs.empty()) merged.push_back(static_cast<int>(c));
  }
  CobordismPtr acc;
  for (int c : merged) {
    const auto& comp = comps[static_cast<std::size_t>(c)];
    CobordismPtr atom = make(cob::Atom{comp.genus, static_cast<int>(comp.inputs.size()), static_cast<int>(comp.outputs.size())});
    acc = acc ? make(cob::Tensor{acc, atom}) : atom;
  }
  return acc ? acc : make(cob::Identity{0});
}

ReportEntry direct_vs_composed(const CobordismExpr& e, const TheoryParams& theory, const ExecOptions& opts) {
  const CobordismPtr normal = normalize_cobordism(e);
  const RationalMatrix direct = evaluate_cobordism(*normal, theory, opts);
  const RationalMatrix composed = evaluate_cobordism(e, theory, opts);
  return {"direct-vs-composed",
          "r=" + std::to_string(theory.r) + " k=" + std::to_string(theory.k) + " " + print_cobordism(e) +
              " ~ " + print_cobordism(*normal),
          direct == composed, composed.to_json().dump(), direct.to_json().dump()};
}

}  // namespace grasstqft
