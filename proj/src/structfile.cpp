#include "pqnb/structfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace pqnb {

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;

  Token next() {
    while (pos < src.size()) {
      char ch = src[pos];
      if (ch == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos;
      } else if (ch == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    if (pos >= src.size()) return {Tok::End, "", line};
    char ch = src[pos];
    if (ch == '"') {
      size_t start = ++pos;
      while (pos < src.size() && src[pos] != '"') {
        if (src[pos] == '\n') ++line;
        ++pos;
      }
      if (pos >= src.size()) throw StructFileError("unterminated string", line);
      std::string s = src.substr(start, pos - start);
      ++pos;
      return {Tok::String, std::move(s), line};
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        ++pos;
      return {Tok::Ident, src.substr(start, pos - start), line};
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '.') {
      size_t start = pos;
      ++pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '.' ||
              src[pos] == '-' || src[pos] == '+') &&
             src[pos] != ',') {
        // allow 1e-9 style exponents; stop at separators
        if ((src[pos] == '-' || src[pos] == '+') &&
            !(src[pos - 1] == 'e' || src[pos - 1] == 'E'))
          break;
        ++pos;
      }
      return {Tok::Number, src.substr(start, pos - start), line};
    }
    ++pos;
    return {Tok::Punct, std::string(1, ch), line};
  }
};

struct FileParser {
  Lexer lex;
  Token cur;

  explicit FileParser(const std::string& src) : lex{src} { cur = lex.next(); }

  void advance() { cur = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw StructFileError(msg, cur.line); }

  bool at_punct(const char* p) { return cur.kind == Tok::Punct && cur.text == p; }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    advance();
  }

  std::string expect_ident() {
    if (cur.kind != Tok::Ident) fail("expected identifier");
    std::string s = cur.text;
    advance();
    return s;
  }

  std::string expect_string() {
    if (cur.kind != Tok::String) fail("expected quoted string");
    std::string s = cur.text;
    advance();
    return s;
  }

  long long expect_int() {
    if (cur.kind != Tok::Number) fail("expected integer");
    try {
      size_t used = 0;
      long long v = std::stoll(cur.text, &used);
      if (used != cur.text.size()) fail("expected integer, got '" + cur.text + "'");
      advance();
      return v;
    } catch (const std::invalid_argument&) {
      fail("expected integer, got '" + cur.text + "'");
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  double expect_double() {
    if (cur.kind != Tok::Number) fail("expected number");
    double v = std::stod(cur.text);
    advance();
    return v;
  }

  Rational expect_rational() {
    if (cur.kind != Tok::Number) fail("expected rational");
    std::string t = cur.text;
    advance();
    if (at_punct("/")) {
      advance();
      if (cur.kind != Tok::Number) fail("expected denominator");
      std::string d = cur.text;
      advance();
      return Rational(BigInt::from_string(t), BigInt::from_string(d));
    }
    return Rational(BigInt::from_string(t), BigInt(1));
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out;
    out.push_back(expect_ident());
    while (at_punct(",")) {
      advance();
      out.push_back(expect_ident());
    }
    return out;
  }
};

std::vector<int> parse_index_tuple(FileParser& p) {
  p.expect_punct("[");
  std::vector<int> idx;
  idx.push_back(static_cast<int>(p.expect_int()) - 1);
  while (p.at_punct(",")) {
    p.advance();
    idx.push_back(static_cast<int>(p.expect_int()) - 1);
  }
  p.expect_punct("]");
  return idx;
}

void parse_assignments(FileParser& p, const ManifoldPtr& man, TensorField& t, bool increasing_only) {
  p.expect_punct("{");
  std::vector<std::vector<int>> seen;
  while (!p.at_punct("}")) {
    int line = p.cur.line;
    std::vector<int> idx = parse_index_tuple(p);
    p.expect_punct("=");
    std::string text = p.expect_string();
    for (int i : idx)
      if (i < 0 || i >= man->dim()) throw StructFileError("index out of range", line);
    Expr e;
    try {
      e = parse_expr(text, man->chart);
    } catch (const ParseError& pe) {
      throw StructFileError("bad expression '" + text + "': " + pe.what() + " at offset " +
                                std::to_string(pe.position),
                            line);
    }
    if (t.is_endomorphism()) {
      if (idx.size() != 2) throw StructFileError("endomorphism entries need two indices", line);
      t.set_entry(idx[0], idx[1], e);
    } else {
      if (static_cast<int>(idx.size()) != t.degree())
        throw StructFileError("wrong number of indices", line);
      if (increasing_only)
        for (size_t k = 1; k < idx.size(); ++k)
          if (idx[k - 1] >= idx[k])
            throw StructFileError("indices must be strictly increasing", line);
      for (const auto& s : seen)
        if (s == idx) throw StructFileError("duplicate component assignment", line);
      seen.push_back(idx);
      t.set_comp(idx, e);
    }
  }
  p.advance();  // consume '}'
}

}  // namespace

const TensorField* StructureFile::gauge(const std::string& name) const {
  for (const auto& [n, t] : gauges)
    if (n == name) return &t;
  return nullptr;
}

TensorField StructureFile::bivector_or_zero() const {
  return P ? *P : TensorField::multivector(man, 2);
}
TensorField StructureFile::endo_or_zero() const {
  return A ? *A : TensorField::endomorphism(man);
}
TensorField StructureFile::form_or_zero(const std::string& which, int deg) const {
  const std::optional<TensorField>* t = nullptr;
  if (which == "phi") t = &phi;
  else if (which == "H") t = &H;
  else if (which == "sigma") t = &sigma;
  else throw std::invalid_argument("unknown form name " + which);
  return *t ? **t : TensorField::form(man, deg);
}

PqNbStructure StructureFile::as_pqnb() const {
  return PqNbStructure(man, bivector_or_zero(), endo_or_zero(), form_or_zero("phi", 3),
                       form_or_zero("H", 3));
}

GcStructure StructureFile::as_gc() const {
  return GcStructure(man, endo_or_zero(), bivector_or_zero(), form_or_zero("sigma", 2),
                     form_or_zero("H", 3));
}

AdaptedReductionSetup StructureFile::reduction_setup() const {
  if (!reduction) throw std::invalid_argument("no reduction block in file");
  return AdaptedReductionSetup::make_by_names(man, reduction->q, reduction->s, reduction->c,
                                              reduction->c0);
}

StructureFile parse_structure_file(const std::string& text) {
  FileParser p(text);
  StructureFile f;
  bool have_manifold = false;

  while (p.cur.kind != Tok::End) {
    std::string block = p.expect_ident();
    if (block == "manifold") {
      int dim = -1;
      std::vector<std::string> coords;
      std::vector<std::string> guards;
      while (p.cur.kind == Tok::Ident &&
             (p.cur.text == "dim" || p.cur.text == "coords" || p.cur.text == "nonvanishing")) {
        std::string key = p.expect_ident();
        p.expect_punct("=");
        if (key == "dim") {
          dim = static_cast<int>(p.expect_int());
        } else if (key == "coords") {
          coords = p.ident_list();
        } else {
          guards.push_back(p.expect_string());
        }
      }
      if (coords.empty()) p.fail("manifold needs coords=");
      if (dim >= 0 && dim != static_cast<int>(coords.size()))
        p.fail("dim does not match the number of coordinates");
      ChartPtr chart = make_chart(coords);
      std::vector<Expr> nv;
      for (const auto& g : guards) nv.push_back(parse_expr(g, chart));
      f.man = make_manifold(chart, std::move(nv));
      have_manifold = true;
      continue;
    }
    if (!have_manifold) p.fail("the manifold block must come first");

    if (block == "bivector") {
      std::string name = p.expect_ident();
      TensorField t = TensorField::multivector(f.man, 2);
      parse_assignments(p, f.man, t, /*increasing_only=*/true);
      if (name != "P") p.fail("expected bivector name 'P'");
      f.P = std::move(t);
    } else if (block == "endo") {
      std::string name = p.expect_ident();
      TensorField t = TensorField::endomorphism(f.man);
      parse_assignments(p, f.man, t, false);
      if (name != "A") p.fail("expected endomorphism name 'A'");
      f.A = std::move(t);
    } else if (block == "form") {
      std::string name = p.expect_ident();
      int deg = -1;
      if (p.cur.kind == Tok::Ident && p.cur.text == "deg") {
        p.advance();
        p.expect_punct("=");
        deg = static_cast<int>(p.expect_int());
      }
      if (deg < 0) p.fail("form block needs deg=");
      TensorField t = TensorField::form(f.man, deg);
      parse_assignments(p, f.man, t, true);
      if (name == "phi") {
        if (deg != 3) p.fail("phi must have deg=3");
        f.phi = std::move(t);
      } else if (name == "H") {
        if (deg != 3) p.fail("H must have deg=3");
        f.H = std::move(t);
      } else if (name == "sigma") {
        if (deg != 2) p.fail("sigma must have deg=2");
        f.sigma = std::move(t);
      } else {
        p.fail("unknown form name '" + name + "' (expected phi, H or sigma)");
      }
    } else if (block == "gauge") {
      std::string name = p.expect_ident();
      TensorField t = TensorField::form(f.man, 2);
      parse_assignments(p, f.man, t, true);
      f.gauges.emplace_back(std::move(name), std::move(t));
    } else if (block == "reduction") {
      p.expect_punct("{");
      ReductionBlock rb;
      while (!p.at_punct("}")) {
        std::string key = p.expect_ident();
        p.expect_punct("=");
        if (key == "q") rb.q = p.ident_list();
        else if (key == "s") rb.s = p.ident_list();
        else if (key == "c") rb.c = p.ident_list();
        else if (key == "c0") {
          rb.c0.push_back(p.expect_rational());
          while (p.at_punct(",")) {
            p.advance();
            rb.c0.push_back(p.expect_rational());
          }
        } else {
          p.fail("unknown reduction field '" + key + "'");
        }
      }
      p.advance();
      f.reduction = std::move(rb);
    } else if (block == "policy") {
      p.expect_punct("{");
      while (!p.at_punct("}")) {
        std::string key = p.expect_ident();
        p.expect_punct("=");
        if (key == "seed") f.policy.seed = static_cast<uint64_t>(p.expect_int());
        else if (key == "points") f.policy.points = static_cast<int>(p.expect_int());
        else if (key == "tol") f.policy.tolerance = p.expect_double();
        else if (key == "guard") f.policy.guard = p.expect_double();
        else p.fail("unknown policy field '" + key + "'");
      }
      p.advance();
    } else {
      p.fail("unknown block '" + block + "'");
    }
  }
  if (!have_manifold) throw StructFileError("empty or manifold-less structure file", 1);
  return f;
}

StructureFile load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructFileError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_structure_file(ss.str());
}

namespace {

void emit_antisym(std::ostringstream& os, const char* kind, const char* name, int deg,
                  const TensorField& t, bool with_deg) {
  os << kind << " " << name;
  if (with_deg) os << " deg=" << deg;
  os << " {";
  const auto& tuples = increasing_tuples(t.dim(), t.degree());
  bool any = false;
  for (size_t r = 0; r < tuples.size(); ++r) {
    if (t.comp_at(r).is_structural_zero()) continue;
    os << " [";
    for (size_t k = 0; k < tuples[r].size(); ++k) os << (k ? "," : "") << tuples[r][k] + 1;
    os << "]=\"" << t.comp_at(r).to_string() << "\"";
    any = true;
  }
  if (!any) os << " ";
  os << " }\n";
}

}  // namespace

std::string emit_structure_file(const StructureFile& f) {
  std::ostringstream os;
  os << "manifold dim=" << f.man->dim() << " coords=";
  const auto& coords = f.man->chart->coords();
  for (size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  for (const Expr& g : f.man->nonvanishing) os << " nonvanishing=\"" << g.to_string() << "\"";
  os << "\n";
  if (f.P) emit_antisym(os, "bivector", "P", 2, *f.P, false);
  if (f.A) {
    os << "endo A {";
    bool any = false;
    for (int i = 0; i < f.A->dim(); ++i)
      for (int j = 0; j < f.A->dim(); ++j)
        if (!f.A->entry(i, j).is_structural_zero()) {
          os << " [" << i + 1 << "," << j + 1 << "]=\"" << f.A->entry(i, j).to_string() << "\"";
          any = true;
        }
    if (!any) os << " ";
    os << " }\n";
  }
  if (f.phi) emit_antisym(os, "form", "phi", 3, *f.phi, true);
  if (f.H) emit_antisym(os, "form", "H", 3, *f.H, true);
  if (f.sigma) emit_antisym(os, "form", "sigma", 2, *f.sigma, true);
  for (const auto& [name, t] : f.gauges) emit_antisym(os, "gauge", name.c_str(), 2, t, false);
  if (f.reduction) {
    os << "reduction {";
    auto lst = [&os](const char* key, const std::vector<std::string>& v) {
      if (v.empty()) return;
      os << " " << key << "=";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    lst("q", f.reduction->q);
    lst("s", f.reduction->s);
    lst("c", f.reduction->c);
    if (!f.reduction->c0.empty()) {
      os << " c0=";
      for (size_t i = 0; i < f.reduction->c0.size(); ++i)
        os << (i ? "," : "") << f.reduction->c0[i].to_string();
    }
    os << " }\n";
  }
  os << "policy { seed=" << f.policy.seed << " points=" << f.policy.points << " tol="
     << f.policy.tolerance << " guard=" << f.policy.guard << " }\n";
  return os.str();
}

}  // namespace pqnb
