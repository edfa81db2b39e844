#include "primecert/published.hpp"

namespace primecert {

namespace {

std::optional<std::string> none_s() { return std::nullopt; }

}  // namespace

const std::vector<ReferenceCase>& reference_cases() {
  static const std::vector<ReferenceCase> table = [] {
    std::vector<ReferenceCase> t;
    // k=3 and k=4: thresholds only, displays were printed in closed form.
    t.push_back({3, {2, 3}, 13, 13, 1, none_s(), none_s(), std::nullopt});
    t.push_back({4, {2, 3}, 13, 13, 1, none_s(), none_s(), std::nullopt});
    t.push_back({5, {2, 3, 5}, 13, 49, 2, "21.627", "24.287", std::nullopt});
    // The published d_1 = 13 here disagrees with the indicator oracle
    // (19); kept verbatim so the mismatch surfaces as a warning.
    t.push_back({6, {2, 3, 5}, 13, 43, 2, "22.967", "22.092", std::nullopt});
    t.push_back({5, {2, 3, 5, 13}, 19, 1309, 3, "259.523", "239.414", std::nullopt});
    t.push_back({8, {2, 3, 5, 7, 19, 31}, 41, 785179, 9, "81375.551", "73787.953",
                 std::nullopt});
    t.push_back({11, {2, 3, 5, 7, 11, 31, 43}, 61, 7544113, 11, "2081740.831",
                 "2067240.713", std::nullopt});
    t.push_back({12, {2, 3, 5, 7, 11, 31, 43}, 61, 3233107, 13, "2132199.327",
                 "1997810.591", std::nullopt});
    // The published tail cap 2^6 is smaller than 2^(#P-1) = 2^7 for this
    // eight-prime set. Published d_last / m / rhs refer to a fixed scan
    // limit of 1.2e6 and are omitted: the generator may extend the scan.
    t.push_back({13, {2, 3, 5, 7, 11, 13, 31, 43}, 61, std::nullopt, std::nullopt,
                 "26145220.719", none_s(), Integer(64)});
    t.push_back({14, {2, 3, 5, 7, 11, 13, 31, 43, 61, 71, 83}, 101, 611203, 28,
                 "9183103103292.885", "9173820030601.213", Integer(1024)});
    t.push_back({15, {2, 3, 5, 7, 11, 13, 43, 61, 71, 83}, 101, 1186213, 24,
                 "311662041740.439", "311652500411.160", Integer(512)});
    return t;
  }();
  return table;
}

namespace {

// An enclosure confirms a display mismatch only when both endpoints
// round (nearest, half away from zero) to the same 3-decimal string and
// that string differs from the published one. Endpoints that round
// apart straddle a rounding boundary: nothing can be concluded.
void compare_display(std::vector<Discrepancy>& out, const std::string& field,
                     const Enclosure& e, const std::string& published) {
  std::string dlo = e.lo().to_decimal(3, round_dir::nearest);
  std::string dhi = e.hi().to_decimal(3, round_dir::nearest);
  if (dlo != dhi) return;
  if (dlo != published) out.push_back({field, dlo, published});
}

}  // namespace

std::vector<Discrepancy> compare_to_reference(const Certificate& cert,
                                              const ConditionResult& cond) {
  std::vector<Discrepancy> out;
  const ReferenceCase* ref = nullptr;
  for (const auto& rc : reference_cases()) {
    if (rc.k == cert.k && rc.primes == cert.primes) {
      ref = &rc;
      break;
    }
  }
  if (!ref) return out;

  if (ref->d_first && !cert.thresholds.empty() &&
      cert.thresholds.front() != *ref->d_first) {
    out.push_back({"d_1", std::to_string(cert.thresholds.front()),
                   std::to_string(*ref->d_first)});
  }
  if (ref->d_last && !cert.thresholds.empty() &&
      cert.thresholds.back() != *ref->d_last) {
    out.push_back({"d_last", std::to_string(cert.thresholds.back()),
                   std::to_string(*ref->d_last)});
  }
  if (ref->m && cert.m_found != *ref->m) {
    out.push_back({"m_found", std::to_string(cert.m_found), std::to_string(*ref->m)});
  }
  if (ref->tail_cap && cert.m_cap != *ref->tail_cap) {
    out.push_back({"tail_cap", cert.m_cap.get_str(), ref->tail_cap->get_str()});
  }
  if (ref->lhs_3dp) compare_display(out, "lhs", cond.lhs, *ref->lhs_3dp);
  if (ref->rhs_3dp) compare_display(out, "rhs", cond.rhs, *ref->rhs_3dp);
  return out;
}

}  // namespace primecert
