#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperdet/counting.hpp"

namespace hyperdet {

inline constexpr const char* kQIntConvention = "[n]_q = 0 for n <= 0, so shapes outside the staircase give 0";

/// Number when it fits in 64 bits, decimal string otherwise.
nlohmann::json bigint_json(const BigInt& v);
nlohmann::json coefficients_json(const QPolynomial& p);

/// null when f matches the product, else the mismatch in structured form.
nlohmann::json counterexample_json(const CountReport& r);
/// Timing fields are dropped when deterministic is set.
nlohmann::json report_json(const CountReport& r, bool deterministic);

void write_csv_header(std::ostream& os);
/// One row per (shape, q, method).
void write_csv_rows(std::ostream& os, const CountReport& r);

/// Short human-readable line for a report.
std::string plain_line(const CountReport& r);

}  // namespace hyperdet
