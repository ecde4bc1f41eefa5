#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hoods/milp.hpp"

namespace hoods {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool lp_safe_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '.';
}

// Section keywords of the LP format; an identifier spelled like one confuses readers.
bool lp_keyword(const std::string& s) {
  static const std::unordered_set<std::string> words{
      "free", "inf", "infinity", "bound", "bounds", "bin", "binary", "binaries", "gen", "general",
      "generals", "int", "integer", "integers", "semi", "semis", "sos", "st", "subject", "such",
      "to", "that", "end", "min", "max", "minimize", "maximize", "minimum", "maximum", "obj"};
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return words.count(lower) > 0;
}

// LP and MPS identifiers: [A-Za-z0-9_.], not starting with a digit, '.' or 'e',
// and not an LP keyword.
// Rewritten names get their ordinal appended so they stay unique.
std::vector<std::string> safe_names(const std::vector<std::string>& raw, char prefix) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  std::unordered_set<std::string> taken(raw.begin(), raw.end());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& n = raw[i];
    std::string s;
    bool changed = n.empty();
    for (char c : n) {
      if (lp_safe_char(c)) {
        s += c;
      } else {
        s += '_';
        changed = true;
      }
    }
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.' ||
        s[0] == 'e' || s[0] == 'E' || lp_keyword(s)) {
      s = std::string(1, prefix) + "_" + s;
      changed = true;
    }
    if (changed) {
      s += "_" + std::to_string(i);
      while (taken.count(s)) s += "_";
    }
    taken.insert(s);
    out.push_back(std::move(s));
  }
  return out;
}

void write_lp(const ModelSpec& spec, std::ostream& out) {
  std::vector<std::string> raw_cols, raw_rows;
  for (const auto& v : spec.variables()) raw_cols.push_back(v.name);
  for (const auto& r : spec.constraints()) raw_rows.push_back(r.label);
  const auto cols = safe_names(raw_cols, 'x');
  const auto rows = safe_names(raw_rows, 'c');

  out << "\\ hoods model: " << spec.num_variables() << " variables, " << spec.num_constraints()
      << " constraints\n";
  out << "Minimize\n obj:";
  bool any = false;
  const auto& obj = spec.objective();
  for (std::size_t j = 0; j < obj.size(); ++j) {
    if (obj[j] == 0.0) continue;
    out << (obj[j] < 0 ? " - " : " + ") << num(std::abs(obj[j])) << ' ' << cols[j];
    any = true;
  }
  if (spec.objective_constant() != 0.0) {
    const double c = spec.objective_constant();
    out << (c < 0 ? " - " : " + ") << num(std::abs(c));
    any = true;
  }
  if (!any) out << " 0";
  out << "\nSubject To\n";
  const auto& cons = spec.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const auto& r = cons[i];
    out << ' ' << rows[i] << ':';
    // An empty row still needs a column reference to parse.
    if (r.terms.empty() && !cols.empty()) out << " 0 " << cols.front();
    bool first = true;
    for (const auto& t : r.terms) {
      out << (t.coef < 0 ? " - " : (first ? " " : " + ")) << num(std::abs(t.coef)) << ' '
          << cols[static_cast<std::size_t>(t.var.index)];
      first = false;
    }
    switch (r.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::GreaterEqual: out << " >= "; break;
      case Sense::Equal: out << " = "; break;
    }
    out << num(r.rhs) << '\n';
  }
  out << "Bounds\n";
  const auto& vars = spec.variables();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    const bool bin = v.kind == VarKind::Binary;
    const double dl = 0.0, du = bin ? 1.0 : kInf;
    if (v.lower == dl && v.upper == du) continue;
    if (v.lower == v.upper) {
      out << ' ' << cols[j] << " = " << num(v.lower) << '\n';
    } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << ' ' << cols[j] << " free\n";
    } else {
      out << ' ' << num(v.lower) << " <= " << cols[j] << " <= " << num(v.upper) << '\n';
    }
  }
  bool header = false;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].kind != VarKind::Binary) continue;
    if (!header) {
      out << "Binaries\n";
      header = true;
    }
    out << ' ' << cols[j] << '\n';
  }
  out << "End\n";
}

void write_mps(const ModelSpec& spec, std::ostream& out) {
  std::vector<std::string> raw_cols, raw_rows;
  for (const auto& v : spec.variables()) raw_cols.push_back(v.name);
  for (const auto& r : spec.constraints()) raw_rows.push_back(r.label);
  const auto cols = safe_names(raw_cols, 'x');
  const auto rows = safe_names(raw_rows, 'c');
  const auto& vars = spec.variables();
  const auto& cons = spec.constraints();

  // Column-wise view of the row-wise spec.
  std::vector<std::vector<std::pair<std::size_t, double>>> by_col(vars.size());
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (const auto& t : cons[i].terms) by_col[static_cast<std::size_t>(t.var.index)].push_back({i, t.coef});

  out << "NAME hoods\nROWS\n N obj\n";
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const char* s = cons[i].sense == Sense::LessEqual ? "L" : cons[i].sense == Sense::Equal ? "E" : "G";
    out << ' ' << s << ' ' << rows[i] << '\n';
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  const auto& obj = spec.objective();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const bool bin = vars[j].kind == VarKind::Binary;
    if (bin != in_int) {
      out << "    MARKER" << marker++ << " 'MARKER' " << (bin ? "'INTORG'" : "'INTEND'") << '\n';
      in_int = bin;
    }
    bool wrote = false;
    if (obj[j] != 0.0) {
      out << "    " << cols[j] << " obj " << num(obj[j]) << '\n';
      wrote = true;
    }
    for (const auto& [i, c] : by_col[j]) {
      out << "    " << cols[j] << ' ' << rows[i] << ' ' << num(c) << '\n';
      wrote = true;
    }
    if (!wrote) out << "    " << cols[j] << " obj 0\n";
  }
  if (in_int) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  if (spec.objective_constant() != 0.0) out << "    rhs obj " << num(-spec.objective_constant()) << '\n';
  for (std::size_t i = 0; i < cons.size(); ++i)
    if (cons[i].rhs != 0.0) out << "    rhs " << rows[i] << ' ' << num(cons[i].rhs) << '\n';
  out << "BOUNDS\n";
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    if (v.kind == VarKind::Binary) {
      if (v.lower == v.upper) out << " FX bnd " << cols[j] << ' ' << num(v.lower) << '\n';
      else if (v.lower != 0.0 || v.upper != 1.0) {
        out << " LO bnd " << cols[j] << ' ' << num(v.lower) << '\n';
        out << " UP bnd " << cols[j] << ' ' << num(v.upper) << '\n';
      } else {
        out << " BV bnd " << cols[j] << '\n';
      }
      continue;
    }
    if (v.lower == v.upper) {
      out << " FX bnd " << cols[j] << ' ' << num(v.lower) << '\n';
      continue;
    }
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << " FR bnd " << cols[j] << '\n';
      continue;
    }
    if (std::isinf(v.lower)) out << " MI bnd " << cols[j] << '\n';
    else if (v.lower != 0.0) out << " LO bnd " << cols[j] << ' ' << num(v.lower) << '\n';
    if (!std::isinf(v.upper)) out << " UP bnd " << cols[j] << ' ' << num(v.upper) << '\n';
  }
  out << "ENDATA\n";
}

}  // namespace

void export_model(const ModelSpec& spec, ModelFormat format, std::ostream& out) {
  if (format == ModelFormat::Lp) write_lp(spec, out);
  else write_mps(spec, out);
}

void export_model(const ModelSpec& spec, ModelFormat format, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  export_model(spec, format, f);
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace hoods
