#include <fstream>
#include <sstream>

#include "ecarm/ec.hpp"

namespace ecarm {
namespace ec {

const std::vector<CurveSpec>& builtin_catalog() {
  static const std::vector<CurveSpec> catalog = [] {
    std::vector<CurveSpec> cat;
    cat.push_back(CurveSpec::make(
        "cm1", 3, 0, 1, 1, 2,
        "j = 1728, CM by Z[i]; generator found by duplication descent"));
    cat.push_back(CurveSpec::make(
        "cm2", -30, 56, 2, -5, 9,
        "j = 8000, CM by Z[sqrt(-2)]"));
    cat.push_back(CurveSpec::make(
        "cm3", 0, -2, 3, 3, 5,
        "classical Mordell curve of rank 1, CM by Z[zeta_3]"));
    cat.push_back(CurveSpec::make(
        "cm7", -35, 98, 7, 2, 6,
        "j = -3375, CM field Q(sqrt(-7))"));
    cat.push_back(CurveSpec::make(
        "cm11", -264, 1694, 11, 11, 11,
        "j = -32768, CM field Q(sqrt(-11))"));
    cat.push_back(CurveSpec::make(
        "cm19", -152, -722, 19, 19, 57,
        "j = -884736, CM field Q(sqrt(-19)); quadratic twist with integral "
        "generator"));
    cat.push_back(CurveSpec::make(
        "cm43", -13760, 621264, 43, 41, 355,
        "j = -884736000, CM field Q(sqrt(-43))"));
    cat.push_back(CurveSpec::make(
        "cm67", -117920, 15585808, 67, 201, 67,
        "j = -147197952000, CM field Q(sqrt(-67))"));
    cat.push_back(CurveSpec::make(
        "cm163", Int(-34790720), Int("78984748304"), 163, 3400, 548,
        "j = -262537412640768000, CM field Q(sqrt(-163))"));
    return cat;
  }();
  return catalog;
}

std::vector<CurveSpec> load_catalog(std::istream& in) {
  std::vector<CurveSpec> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream fields(line);
    std::string name, a_s, b_s, d_s, x_s, y_s;
    if (!(fields >> name >> a_s >> b_s >> d_s >> x_s >> y_s))
      throw CatalogError("catalog line " + std::to_string(lineno) +
                         ": expected 'name a b d x0 y0 [note]'");
    std::string note;
    std::getline(fields, note);
    size_t ns = note.find_first_not_of(" \t");
    note = ns == std::string::npos ? std::string() : note.substr(ns);
    CurveSpec curve;
    try {
      curve = CurveSpec::make(name, Int(a_s), Int(b_s), Int(d_s), Int(x_s),
                              Int(y_s), note);
    } catch (const std::invalid_argument&) {
      throw CatalogError("catalog line " + std::to_string(lineno) +
                         ": malformed integer field");
    }
    if (curve.d <= 0)
      throw CatalogError("catalog line " + std::to_string(lineno) +
                         ": d must be positive");
    CatalogCheck check = verify_catalog_entry(curve);
    if (!check.accepted)
      throw CatalogError("catalog entry '" + curve.name +
                         "' rejected: " + check.failure);
    entries.push_back(std::move(curve));
  }
  return entries;
}

std::vector<CurveSpec> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file: " + path);
  return load_catalog(in);
}

std::string catalog_to_text(const std::vector<CurveSpec>& entries) {
  std::ostringstream out;
  out << "# curve catalog: name a b d x0 y0 note\n";
  for (const CurveSpec& c : entries) {
    out << c.name << ' ' << c.a << ' ' << c.b << ' ' << c.d << ' ' << c.x0
        << ' ' << c.y0;
    if (!c.note.empty()) out << ' ' << c.note;
    out << '\n';
  }
  return out.str();
}

}  // namespace ec
}  // namespace ecarm
