#include "hyperdet/report.hpp"

#include <cstdint>
#include <limits>
#include <sstream>

namespace hyperdet {

nlohmann::json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

nlohmann::json coefficients_json(const QPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : p.coefficients()) out.push_back(bigint_json(c));
  return out;
}

nlohmann::json counterexample_json(const CountReport& r) {
  if (r.flags.poly_vs_conjecture) return nullptr;
  return {{"k", r.shape.k()},
          {"lambda", r.shape.lam().parts()},
          {"mu", r.shape.mu().parts()},
          {"f_poly", coefficients_json(r.f_poly)},
          {"conjectured", coefficients_json(r.conjectured.f_product)},
          {"difference", coefficients_json(r.f_poly - r.conjectured.f_product)},
          {"proved_family", r.proved_family}};
}

nlohmann::json report_json(const CountReport& r, bool deterministic) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& m : r.results) {
    nlohmann::json row = {{"q", m.q}, {"method", to_string(m.method)}, {"count", bigint_json(m.count)}};
    if (!deterministic) row["seconds"] = m.seconds;
    results.push_back(std::move(row));
  }
  auto optional_flag = [](const std::optional<bool>& f) -> nlohmann::json {
    if (!f) return nullptr;
    return *f;
  };
  nlohmann::json out = {
      {"k", r.shape.k()},
      {"lambda", r.shape.lam().parts()},
      {"mu", r.shape.mu().parts()},
      {"results", std::move(results)},
      {"f_poly", coefficients_json(r.f_poly)},
      {"conjectured", coefficients_json(r.conjectured.f_product)},
      {"full_conjectured", coefficients_json(r.conjectured.full)},
      {"hyperrook_count", r.hyperrook},
      {"flags",
       {{"cells_vs_brute", optional_flag(r.flags.cells_vs_brute)},
        {"cells_vs_action", optional_flag(r.flags.cells_vs_action)},
        {"poly_vs_conjecture", r.flags.poly_vs_conjecture},
        {"f1_vs_hyperrook", r.flags.f1_vs_hyperrook}}},
      {"proved_family", r.proved_family},
      {"counterexample", counterexample_json(r)},
  };
  if (!r.skipped.empty()) out["skipped"] = r.skipped;
  if (!deterministic) out["timing"] = {{"cells_seconds", r.cells_seconds}};
  return out;
}

void write_csv_header(std::ostream& os) { os << "k,lambda,mu,q,method,count\n"; }

void write_csv_rows(std::ostream& os, const CountReport& r) {
  for (const auto& m : r.results) {
    os << r.shape.k() << ",\"" << r.shape.lam().to_string() << "\",\"" << r.shape.mu().to_string() << "\"," << m.q
       << ',' << to_string(m.method) << ',' << m.count << '\n';
  }
}

std::string plain_line(const CountReport& r) {
  std::ostringstream os;
  os << r.shape.to_string() << "  f = " << r.f_poly.to_string();
  for (const auto& m : r.results) os << "  [q=" << m.q << ' ' << to_string(m.method) << ' ' << m.count << ']';
  if (r.internal_mismatch()) os << "  MISMATCH";
  else if (r.proved_failure()) os << "  PROVED-CASE FAILURE";
  else if (r.finding()) os << "  FINDING (product " << r.conjectured.f_product.to_string() << ")";
  else os << "  matches product";
  return os.str();
}

}  // namespace hyperdet
