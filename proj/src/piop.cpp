#include "usc/piop.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace usc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

void Transcript::begin_round() {
  rounds_.emplace_back();
  ++metrics_.rounds;
}

std::vector<fe> Transcript::send_scalars(std::vector<fe> xs) {
  if (rounds_.empty()) begin_round();
  if (scalar_tamper && !xs.empty()) {
    scalar_tamper(xs);
    scalar_tamper = nullptr;
  }
  auto& r = rounds_.back();
  r.scalars.insert(r.scalars.end(), xs.begin(), xs.end());
  metrics_.field_elements_sent += xs.size();
  return xs;
}

int Transcript::send_oracle(Oracle o) {
  if (rounds_.empty()) begin_round();
  if (oracle_tamper) {
    oracle_tamper(o);
    oracle_tamper = nullptr;
  }
  o.id = static_cast<int>(oracles_.size());
  o.kind = Oracle::Kind::Real;
  rounds_.back().oracle_ids.push_back(o.id);
  ++metrics_.oracles_sent;
  oracles_.push_back(std::move(o));
  return oracles_.back().id;
}

int Transcript::add_input(Oracle o) {
  o.id = static_cast<int>(oracles_.size());
  o.kind = Oracle::Kind::Real;
  o.is_input = true;
  oracles_.push_back(std::move(o));
  return oracles_.back().id;
}

int Transcript::add_virtual(Oracle o) {
  o.id = static_cast<int>(oracles_.size());
  o.kind = Oracle::Kind::Virtual;
  oracles_.push_back(std::move(o));
  return oracles_.back().id;
}

fe Transcript::challenge(bool nonzero) {
  // Rejection sampling for uniformity over [0, p-1] (or [1, p-1]).
  for (;;) {
    std::uint64_t raw = splitmix64(seed_ ^ splitmix64(draws_));
    ++draws_;
    if (F.p <= (std::uint64_t(1) << 32)) {
      // fold to avoid modulo bias on small p
      std::uint64_t bound = UINT64_MAX - UINT64_MAX % F.p;
      if (raw >= bound) continue;
      raw %= F.p;
    } else {
      if (raw >= F.p) continue;
    }
    if (nonzero && raw == 0) continue;
    if (!rounds_.empty()) rounds_.back().challenges.push_back(raw);
    return raw;
  }
}

fe Transcript::eval_backing(const Oracle::Backing& b, fe x) const {
  if (b.poly) return b.poly->eval(F, x);
  return b.table->eval_at(F, x);
}

void Transcript::charge(int id, fe x) {
  // one count per distinct (component oracle, point) pair per round
  std::uint64_t round = rounds_.empty() ? 0 : rounds_.size() - 1;
  if (ledger_.emplace(round, id, x).second) ++metrics_.queries;
}

fe Transcript::query(int id, fe x, unsigned comp) {
  const Oracle& o = oracles_.at(id);
  if (o.kind == Oracle::Kind::Real) {
    charge(id, x);
    return eval_backing(o.backings.at(comp), x);
  }
  fe acc = o.shift.empty() ? 0 : o.shift.at(comp).eval(F, x);
  for (const auto& t : o.terms.at(comp))
    acc = F.add(acc, F.mul(t.weight, query(t.src, x, t.comp)));
  return acc;
}

std::vector<fe> Transcript::query_all(int id, fe x) {
  const Oracle& o = oracles_.at(id);
  std::vector<fe> out(o.width);
  for (unsigned c = 0; c < o.width; ++c) out[c] = query(id, x, c);
  return out;
}

fe Transcript::peek(int id, fe x, unsigned comp) const {
  const Oracle& o = oracles_.at(id);
  if (o.kind == Oracle::Kind::Real)
    return eval_backing(o.backings.at(comp), x);
  fe acc = o.shift.empty() ? 0 : o.shift.at(comp).eval(F, x);
  for (const auto& t : o.terms.at(comp))
    acc = F.add(acc, F.mul(t.weight, peek(t.src, x, t.comp)));
  return acc;
}

void Transcript::set_verdict(bool accept, std::string reason) {
  verdict_ = accept;
  reason_ = std::move(reason);
}

nlohmann::json Transcript::to_json(const std::string& protocol, unsigned m,
                                   unsigned d, unsigned q) const {
  nlohmann::json j;
  j["protocol"] = protocol;
  j["field_modulus"] = std::to_string(F.p);
  j["m"] = m;
  j["d"] = d;
  j["q"] = q;
  j["seed"] = seed_;
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : rounds_) {
    nlohmann::json scalars = nlohmann::json::array();
    for (fe s : r.scalars) scalars.push_back(std::to_string(s));
    nlohmann::json oracles = nlohmann::json::array();
    for (int id : r.oracle_ids)
      oracles.push_back({{"id", id},
                         {"degree_bound", oracles_.at(id).degree_bound}});
    nlohmann::json challenges = nlohmann::json::array();
    for (fe c : r.challenges) challenges.push_back(std::to_string(c));
    rounds.push_back({{"prover", {{"scalars", scalars}, {"oracles", oracles}}},
                      {"challenge", challenges}});
  }
  j["rounds"] = rounds;
  j["verdict"] = verdict_.has_value()
                     ? (accepted() ? "accept" : "reject")
                     : "none";
  if (!reason_.empty()) j["reject_reason"] = reason_;
  j["metrics"] = {{"rounds", metrics_.rounds},
                  {"field_elements", metrics_.field_elements_sent},
                  {"oracles", metrics_.oracles_sent},
                  {"queries", metrics_.queries},
                  {"prover_field_ops", metrics_.prover_field_ops}};
  return j;
}

}  // namespace usc
