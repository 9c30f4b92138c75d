#pragma once

#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "promises/promises.hpp"

namespace promises::cli {

using json = nlohmann::ordered_json;

enum class ExitCode : int {
  Ok = 0,
  Parse = 2,
  Model = 3,
  Verification = 4,
  TooLarge = 5,
};

inline ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return ExitCode::Parse;
    case ErrorCode::InstanceTooLarge: return ExitCode::TooLarge;
    default: return ExitCode::Model;
  }
}

/// A result the tool computed but could not confirm against an independent check.
class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& what, json details)
      : std::runtime_error(what), details_(std::move(details)) {}
  const json& details() const noexcept { return details_; }

 private:
  json details_;
};

/// Input error carrying per-member diagnostics for the report.
class DocumentError : public Error {
 public:
  DocumentError(ErrorCode code, const std::string& message, json diagnostics)
      : Error(code, message), diagnostics_(std::move(diagnostics)) {}
  const json& diagnostics() const noexcept { return diagnostics_; }

 private:
  json diagnostics_;
};

struct Document {
  RationalVector intensities;  ///< user order
  long long kappa;
  std::vector<std::string> labels;
  Committee committee;
};

inline json encode(const Rational& x) { return to_string(x); }

inline json encode(const RationalVector& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(encode(x));
  return out;
}

/// Integers, or strings in "p", "p/q" or decimal form. JSON floats are
/// rejected because they are not exact.
inline Rational decode_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }
  throw Error(ErrorCode::ParseError,
              where + ": expected an integer or a \"p/q\" string, got " + j.dump());
}

inline RationalVector decode_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, where + ": expected an array");
  RationalVector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(decode_rational(j[i], where + "[" + std::to_string(i + 1) + "]"));
  return out;
}

namespace detail {

inline json member_table(const RationalVector& u, const std::vector<std::string>& labels) {
  json rows = json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    json row{{"index", i + 1}};
    if (!labels.empty()) row["label"] = labels[i];
    row["intensity"] = encode(u[i]);
    row["side"] = u[i] < 0 ? "opposes" : "supports";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline Document parse_document(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "document must be a JSON object");
  if (!j.contains("intensities")) throw Error(ErrorCode::ParseError, "missing \"intensities\"");
  if (!j.contains("kappa") || !j["kappa"].is_number_integer())
    throw Error(ErrorCode::ParseError, "\"kappa\" must be an integer");

  auto intensities = decode_vector(j["intensities"], "intensities");
  const auto kappa = j["kappa"].get<long long>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw Error(ErrorCode::ParseError, "\"labels\" must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw Error(ErrorCode::ParseError, "labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != intensities.size())
      throw Error(ErrorCode::ParseError, "got " + std::to_string(labels.size()) + " labels for " +
                                             std::to_string(intensities.size()) + " members");
  }
  try {
    auto committee = build_committee(intensities, kappa);
    return {std::move(intensities), kappa, std::move(labels), std::move(committee)};
  } catch (const Error& e) {
    json diag{{"members", detail::member_table(intensities, labels)},
              {"sum", encode(sum(intensities))},
              {"kappa", kappa}};
    throw DocumentError(e.code(), e.what(), std::move(diag));
  }
}

inline Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

/// A profile argument: a JSON array, or a comma separated list such as "3,0,-3".
inline RationalVector parse_profile_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return decode_vector(json::parse(text), "profile");
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid profile JSON: ") + e.what());
    }
  }
  RationalVector out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_rational(std::string_view(text).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct CheckOptions {
  std::size_t brute_force_cap = kDefaultEnumerationCap;
};

/// Report builder bound to one document: translates sorted positions into
/// 1-based user indices.
class Reporter {
 public:
  explicit Reporter(const Document& doc) : doc_(doc), c_(doc.committee) {}

  std::size_t user(std::size_t sorted) const { return c_.user_index(sorted) + 1; }

  json members(const std::vector<std::size_t>& sorted) const {
    std::vector<std::size_t> idx;
    for (auto k : sorted) idx.push_back(user(k));
    std::sort(idx.begin(), idx.end());
    return idx;
  }

  json profile(const RationalVector& sorted) const { return encode(c_.to_user_order(sorted)); }

  std::string rewrite(const std::string& detail) const {
    static const std::regex tag("member@([0-9]+)");
    std::string out;
    auto it = std::sregex_iterator(detail.begin(), detail.end(), tag);
    std::size_t last = 0;
    for (; it != std::sregex_iterator(); ++it) {
      out += detail.substr(last, static_cast<std::size_t>(it->position()) - last);
      const auto k = std::stoul((*it)[1].str());
      out += "member " + name(c_.user_index(k));
      last = static_cast<std::size_t>(it->position() + it->length());
    }
    return out + detail.substr(last);
  }

  std::string name(std::size_t user0) const {
    return doc_.labels.empty() ? std::to_string(user0 + 1) : doc_.labels[user0];
  }

  json committee() const {
    json j{{"size", c_.size()},
           {"kappa", c_.kappa()},
           {"kappa_hat", c_.kappa_hat()},
           {"opponents", c_.opponents()},
           {"intensities", encode(doc_.intensities)}};
    if (!doc_.labels.empty()) j["labels"] = doc_.labels;
    return j;
  }

  json sorted_view() const {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < c_.size(); ++k) order.push_back(user(k));
    return {{"order", order}, {"intensities", encode(c_.intensities())}};
  }

  json aggregates(const Aggregates& a) const {
    json j{{"U_S", encode(a.opposition)},
           {"U_R", encode(a.support)},
           {"G_S", encode(a.gains_from_trade)}};
    json surplus = json::object();
    for (const auto& [k, value] : a.surplus) surplus[std::to_string(user(k))] = encode(value);
    j["delta_U"] = std::move(surplus);
    j["delta_U_threshold"] = encode(a.threshold_surplus);
    if (a.promiser_level) j["u_star"] = encode(*a.promiser_level);
    if (a.critical_position) j["k_star"] = user(*a.critical_position);
    if (a.higher_order_transfer) j["T_star"] = encode(*a.higher_order_transfer);
    return j;
  }

  json verdict(const EquilibriumVerdict& v) const {
    json list = json::array();
    for (const auto& x : v.violations)
      list.push_back({{"condition", condition_name(x.condition)},
                      {"members", members(x.members)},
                      {"detail", rewrite(x.detail)}});
    return {{"is_equilibrium", v.is_equilibrium}, {"violations", std::move(list)}};
  }

  json deviation(const BlockingDeviation& d) const {
    std::vector<std::size_t> m(d.coalition.begin(), d.coalition.end());
    return {{"coalition", members(m)},
            {"direction", decision_name(d.direction)},
            {"reform", profile(d.new_profile.reform.values())},
            {"status_quo", profile(d.new_profile.status_quo.values())}};
  }

  /// Emits a candidate equilibrium after re-checking it.
  json equilibrium_profile(const PromiseProfile& r, const std::string& source) const {
    const auto v = is_equilibrium(c_, r);
    const bool stable = is_stable(c_, r);
    if (!v.is_equilibrium || !stable)
      throw VerificationFailure(source + " profile failed re-verification",
                                {{"transfers", profile(r.values())}, {"verdict", verdict(v)}});
    RationalVector post(c_.intensities());
    for (std::size_t k = 0; k < post.size(); ++k) post[k] += r[k];
    return {{"transfers", profile(r.values())},
            {"total", encode(total_transfer(r))},
            {"ex_post", profile(post)},
            {"pattern", pattern_name(classify_transfer_pattern(c_, r))},
            {"verified", true}};
  }

 private:
  const Document& doc_;
  const Committee& c_;
};

inline json classification(const Document& doc) {
  const auto& c = doc.committee;
  const Reporter rep(doc);
  const auto a = aggregates(c);
  json j{{"committee", rep.committee()},
         {"regime", regime_name(classify(c, a))},
         {"aggregates", rep.aggregates(a)},
         {"min_transfer", encode(min_total_transfer(c))}};
  const auto critical = critical_member(c);
  j["critical_member"] = critical ? json(rep.user(*critical)) : json(nullptr);
  j["across_aisle"] = c.kappa() >= 2 ? json(all_equilibria_across_aisle(c)) : json(nullptr);
  j["sorted_view"] = rep.sorted_view();
  return j;
}

inline json cmd_classify(const Document& doc) {
  json j{{"command", "classify"}};
  j.update(classification(doc));
  return j;
}

enum class SolveMode { Canonical, Selection, Both };

inline json cmd_solve(const Document& doc, SolveMode mode) {
  const auto& c = doc.committee;
  const Reporter rep(doc);
  json j{{"command", "solve"}};
  j.update(classification(doc));

  if (mode != SolveMode::Selection) {
    const auto r = canonical_equilibrium(c);
    j["canonical"] = rep.equilibrium_profile(r, "canonical");
    if (r.is_zero()) j["canonical"]["note"] = "no promises needed";
  }
  if (mode != SolveMode::Canonical) {
    const auto [r, trace] = run_selection(c);
    json sel = rep.equilibrium_profile(r, "selection");
    if (r.is_zero()) sel["note"] = "no promises needed";
    json steps = json::array();
    auto blocks = [&](const SplitIndices& s) {
      std::vector<std::size_t> lo, hi;
      for (std::size_t k = 0; k < s.bottom; ++k) lo.push_back(k);
      for (std::size_t k = s.top_start; k < c.size(); ++k) hi.push_back(k);
      return json{{"bottom", rep.members(lo)}, {"top", rep.members(hi)}};
    };
    for (const auto& step : trace.steps)
      steps.push_back({{"amount", encode(step.amount)},
                       {"blocks", blocks(step.split)},
                       {"intensities", rep.profile(step.intensities.values)}});
    sel["trace"] = {{"steps", std::move(steps)},
                    {"final_amount", encode(trace.final_amount)},
                    {"final_blocks", trace.final_split ? blocks(*trace.final_split) : json(nullptr)},
                    {"final_intensities", rep.profile(trace.final_intensities.values)}};
    const auto& v = trace.final_intensities.values;
    sel["dispersion"] = encode(v.back() - v.front());
    j["selection"] = std::move(sel);
  }
  if (mode == SolveMode::Both && j["canonical"]["total"] != j["selection"]["total"])
    throw VerificationFailure("canonical and selection totals differ",
                              {{"canonical", j["canonical"]["total"]},
                               {"selection", j["selection"]["total"]}});
  return j;
}

inline json cmd_check(const Document& doc, const RationalVector& reform_user,
                      const std::optional<RationalVector>& status_quo_user,
                      const CheckOptions& opts = {}) {
  const auto& c = doc.committee;
  const Reporter rep(doc);
  const PromiseProfile r(c.from_user_order(reform_user));
  const PromiseProfile s = status_quo_user ? PromiseProfile(c.from_user_order(*status_quo_user))
                                           : PromiseProfile::zero(c.size());
  const PairedProfile p(r, s);

  json j{{"command", "check"}, {"committee", rep.committee()}};
  j["decision"] = decision_name(decision(c, p));
  j["stability_margin"] = encode(stability_margin(c, p));
  j["stable"] = is_stable(c, p);
  if (c.size() <= opts.brute_force_cap)
    j["bruteforce_stable"] = is_stable_bruteforce(c, p, opts.brute_force_cap);
  j["total"] = encode(total_transfer(p));
  j["ex_post"] = rep.profile(ex_post_intensities(c, p).values);

  const auto reduced = reduce_to_reform_contingent(p);
  json eq = rep.verdict(is_equilibrium(c, reduced));
  if (status_quo_user) eq["evaluated_on"] = "reform minus status quo";
  j["equilibrium"] = std::move(eq);
  j["pattern"] = pattern_name(classify_transfer_pattern(c, reduced));

  if (auto dev = find_blocking_coalition(c, p)) {
    if (!deviation_is_valid(c, p, *dev))
      throw VerificationFailure("blocking witness failed replay", rep.deviation(*dev));
    j["blocking"] = rep.deviation(*dev);
  } else {
    j["blocking"] = nullptr;
  }
  return j;
}

inline json cmd_block(const Document& doc, const RationalVector& reform_user,
                      const std::optional<RationalVector>& status_quo_user) {
  const auto& c = doc.committee;
  const Reporter rep(doc);
  const PromiseProfile r(c.from_user_order(reform_user));
  const PromiseProfile s = status_quo_user ? PromiseProfile(c.from_user_order(*status_quo_user))
                                           : PromiseProfile::zero(c.size());
  const PairedProfile p(r, s);
  json j{{"command", "block"}, {"stable", is_stable(c, p)}};
  if (auto dev = find_blocking_coalition(c, p)) {
    if (!deviation_is_valid(c, p, *dev))
      throw VerificationFailure("blocking witness failed replay", rep.deviation(*dev));
    j["blocking"] = rep.deviation(*dev);
  } else {
    j["blocking"] = nullptr;
  }
  return j;
}

inline json cmd_verify(const Document& doc, std::uint64_t seed, std::size_t samples = 5) {
  const auto& c = doc.committee;
  const Reporter rep(doc);
  const auto closed = min_total_transfer(c);
  const auto lp = lp_min_transfer(c);
  const bool agree = closed == lp.optimum;
  json j{{"command", "verify"},
         {"committee", rep.committee()},
         {"closed_form", encode(closed)},
         {"lp", encode(lp.optimum)},
         {"pivots", lp.pivots},
         {"agree", agree},
         {"summary", to_string(closed) + " = " + to_string(lp.optimum) + (agree ? ", OK" : ", MISMATCH")}};
  if (!agree) {
    j["summary"] = "closed-form " + to_string(closed) + " != lp " + to_string(lp.optimum);
    throw VerificationFailure("closed-form and LP minima differ", j);
  }
  j["lp_profile"] = rep.equilibrium_profile(lp.profile, "LP");
  json list = json::array();
  for (const auto& r : sample_equilibria(c, samples, seed))
    list.push_back(rep.equilibrium_profile(r, "sampled"));
  j["seed"] = seed;
  j["samples"] = std::move(list);
  return j;
}

inline json cmd_sweep(const Document& doc, const RationalVector& lambdas) {
  const auto& c = doc.committee;
  const auto base = min_total_transfer(c);
  json rows = json::array();
  for (const auto& lambda : lambdas) {
    const auto scaled = scale_committee(c, lambda);
    const auto t = min_total_transfer(scaled);
    if (t != lambda * base)
      throw VerificationFailure("transfer does not scale linearly",
                                {{"lambda", encode(lambda)}, {"min_transfer", encode(t)}});
    rows.push_back({{"lambda", encode(lambda)},
                    {"min_transfer", encode(t)},
                    {"regime", regime_name(classify(scaled))}});
  }
  return {{"command", "sweep"}, {"base_min_transfer", encode(base)}, {"rows", std::move(rows)}};
}

inline std::string sweep_csv(const json& report) {
  std::string out = "lambda,min_transfer,regime\n";
  for (const auto& row : report["rows"])
    out += row["lambda"].get<std::string>() + "," + row["min_transfer"].get<std::string>() + "," +
           row["regime"].get<std::string>() + "\n";
  return out;
}

inline json error_report(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace promises::cli
