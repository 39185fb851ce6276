#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <branchorder/budget.hpp>
#include <branchorder/family.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/prove.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// The word identities the family's lemma machinery relies on. I1-I3 hold in
// the group of the standard presentation; I4pos/I4neg are free-group
// telescopings and must reduce without any relator.
enum class IdentityId { I1, I2, I3, I4pos, I4neg };

inline const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::I1: return "I1";
    case IdentityId::I2: return "I2";
    case IdentityId::I3: return "I3";
    case IdentityId::I4pos: return "I4pos";
    case IdentityId::I4neg: return "I4neg";
  }
  return "?";
}

struct IdentityInstance {
  IdentityId identity = IdentityId::I1;
  FamilyParams params;
  int i = 1;           // 1..n
  std::int64_t m = 0;  // exponent parameter; ignored by I3

  void validate() const {
    params.validate();
    if (i < 1 || i > params.n) throw std::invalid_argument("identity index out of range");
    if (identity == IdentityId::I4pos && m < 0)
      throw std::invalid_argument("I4pos requires m >= 0");
    if (identity == IdentityId::I4neg && m >= 0)
      throw std::invalid_argument("I4neg requires m < 0");
  }
};

namespace identities_detail {

struct Symbols {
  StandardGeneratorIds id;
  int i;
  const FamilyParams& params;

  int a() const { return id.a(i); }
  int a_next() const { return id.a(params.wrap(i + 1)); }
  int b() const { return id.b(i); }
  int b_prev() const { return id.b(params.wrap(i - 1)); }
  std::int64_t k() const { return params.k[static_cast<std::size_t>(i - 1)]; }
};

// (a_{i+1} a_i^-1)^m.
inline Word cross_power(const Symbols& s, std::int64_t m) {
  return power(word_of({{s.a_next(), 1}, {s.a(), -1}}), m);
}

// Telescoped right-hand side of the free-group identity for (a_{i+1}a_i^-1)^m.
inline Word telescoped(const Symbols& s, std::int64_t m) {
  WordBuilder b;
  b.push(s.a_next(), m);
  if (m >= 0) {
    for (std::int64_t j = m - 1; j >= 1; --j) {
      b.push(s.a_next(), -j);
      b.push(s.a(), -1);
      b.push(s.a_next(), j);
    }
    if (m >= 1) b.push(s.a(), -1);
  } else {
    for (std::int64_t j = -m; j >= 1; --j) {
      b.push(s.a_next(), j);
      b.push(s.a(), 1);
      b.push(s.a_next(), -j);
    }
  }
  return b.take();
}

}  // namespace identities_detail

// The two (or three) displayed forms of an identity instance.
inline std::vector<Word> identity_forms(const IdentityInstance& inst) {
  inst.validate();
  identities_detail::Symbols s{StandardGeneratorIds{inst.params.n}, inst.i, inst.params};
  switch (inst.identity) {
    case IdentityId::I1:
      return {concat(identities_detail::cross_power(s, inst.m), word_of({{s.b(), -1}})),
              word_of({{s.b(), -1}, {s.a(), inst.m}})};
    case IdentityId::I2:
      return {word_of({{s.b_prev(), -1}, {s.a(), inst.m}}),
              word_of({{s.b(), -1}, {s.a(), -1}, {s.b(), -1}, {s.a(), inst.m + s.k()}}),
              word_of({{s.b(), -1},
                       {s.a_next(), -1},
                       {s.b(), -1},
                       {s.a(), inst.m + s.k() + 1}})};
    case IdentityId::I3:
      return {word_of({{s.b(), -1}, {s.a(), s.k()}}),
              word_of({{s.a(), 1}, {s.b(), 1}, {s.b_prev(), -1}}),
              word_of({{s.b(), 1}, {s.a_next(), 1}, {s.a(), -1}, {s.b_prev(), -1}})};
    case IdentityId::I4pos:
    case IdentityId::I4neg:
      return {identities_detail::cross_power(s, inst.m),
              identities_detail::telescoped(s, inst.m)};
  }
  throw std::logic_error("unreachable");
}

// Proofs that every displayed form equals the first one.
struct IdentityProof {
  std::vector<EqualityProof> proofs;
  std::size_t total_steps() const {
    std::size_t n = 0;
    for (const auto& p : proofs) n += p.steps.size();
    return n;
  }
};

using IdentityResult = std::variant<IdentityProof, Unknown>;

// Replays one identity instance. I1-I3 are proven in the standard
// presentation; I4 must already agree under free reduction, and a mismatch
// there is a hard error rather than an Unknown.
inline IdentityResult replay_identity(const IdentityInstance& inst,
                                      const SearchBudget& budget = {}) {
  inst.validate();
  auto forms = identity_forms(inst);
  if (inst.identity == IdentityId::I4pos || inst.identity == IdentityId::I4neg) {
    if (forms[0] != forms[1])
      throw std::logic_error("free-group telescoping failed to reduce; implementation bug");
    return IdentityProof{{EqualityProof{forms[0], forms[1], {}}}};
  }
  Presentation P = build_standard_presentation(inst.params);
  MoveTable moves(P);
  IdentityProof out;
  for (std::size_t f = 1; f < forms.size(); ++f) {
    auto res = prove_equal(P, forms[0], forms[f], budget, moves);
    if (auto* proof = std::get_if<EqualityProof>(&res)) {
      out.proofs.push_back(std::move(*proof));
    } else {
      return std::get<Unknown>(res);
    }
  }
  return out;
}

struct ReplayEntry {
  std::string identity;
  int i = 0;
  std::int64_t m = 0;
  std::string status;  // "proved" | "unknown" | "error"
  std::size_t proof_steps = 0;
  std::int64_t millis = 0;
};

// Runs every identity for all indices and all m in [m_from, m_to], in a
// deterministic order. On Unknown one retry with a 4x state budget
// distinguishes hard instances from transient shortfalls. Instances run in
// parallel up to `threads`; the report order is fixed regardless.
inline std::vector<ReplayEntry> replay_suite(const FamilyParams& params, std::int64_t m_from,
                                             std::int64_t m_to, const SearchBudget& budget = {},
                                             unsigned threads = 1) {
  params.validate();
  budget.validate();
  std::vector<IdentityInstance> instances;
  if (m_from > m_to) return {};
  for (IdentityId id : {IdentityId::I1, IdentityId::I2, IdentityId::I3, IdentityId::I4pos,
                        IdentityId::I4neg}) {
    for (int i = 1; i <= params.n; ++i) {
      if (id == IdentityId::I3) {
        instances.push_back(IdentityInstance{id, params, i, 0});
        continue;
      }
      for (std::int64_t m = m_from; m <= m_to; ++m) {
        if (id == IdentityId::I4pos && m < 0) continue;
        if (id == IdentityId::I4neg && m >= 0) continue;
        instances.push_back(IdentityInstance{id, params, i, m});
      }
    }
  }

  auto run_one = [&budget](const IdentityInstance& inst) {
    ReplayEntry entry;
    entry.identity = identity_name(inst.identity);
    entry.i = inst.i;
    entry.m = inst.m;
    auto started = std::chrono::steady_clock::now();
    try {
      auto res = replay_identity(inst, budget);
      if (std::holds_alternative<Unknown>(res))
        res = replay_identity(inst, budget.scaled_states(4));
      if (auto* proof = std::get_if<IdentityProof>(&res)) {
        entry.status = "proved";
        entry.proof_steps = proof->total_steps();
      } else {
        entry.status = "unknown";
      }
    } catch (const std::logic_error&) {
      entry.status = "error";
    }
    entry.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    return entry;
  };

  std::vector<ReplayEntry> report(instances.size());
  if (threads <= 1) {
    for (std::size_t idx = 0; idx < instances.size(); ++idx) report[idx] = run_one(instances[idx]);
    return report;
  }
  std::vector<std::future<void>> workers;
  std::atomic<std::size_t> cursor{0};
  for (unsigned t = 0; t < threads; ++t)
    workers.push_back(std::async(std::launch::async, [&]() {
      for (std::size_t idx = cursor.fetch_add(1); idx < instances.size();
           idx = cursor.fetch_add(1))
        report[idx] = run_one(instances[idx]);
    }));
  for (auto& w : workers) w.get();
  return report;
}

}  // namespace branchorder
