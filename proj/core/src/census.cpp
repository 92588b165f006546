#include "grrlab/census.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace grr {

using nlohmann::json;

namespace {

json mat_json(const FieldCtx& F, const ProjMat& m) {
  json j = json::array();
  for (FieldElem e : {m.a, m.b, m.c, m.d}) j.push_back(F.coeffs(e));
  return j;
}

json triple_json(const GroupTable& T, std::span<const std::uint32_t> S) {
  json j;
  j["ids"] = std::vector<std::uint32_t>(S.begin(), S.end());
  json mats = json::array();
  for (std::uint32_t s : S) mats.push_back(mat_json(T.ctx(), T.mat(s)));
  j["mats"] = mats;
  return j;
}

std::mt19937_64 make_rng(std::uint64_t seed, long long q, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(q),
                    stream};
  return std::mt19937_64(seq);
}

CensusRecord start_record(const char* name, const FieldCtx& F) {
  CensusRecord r;
  r.experiment = name;
  r.q = F.q();
  r.p = F.p();
  r.f = F.f();
  r.d = (F.q() % 2 == 0) ? 1 : 2;
  return r;
}

struct Violation {
  json reproducer;
};

void record_violation(CensusRecord& r, const std::string& what, json reproducer) {
  r.confirmed = false;
  json v;
  v["what"] = what;
  v["reproducer"] = std::move(reproducer);
  r.details["violations"].push_back(std::move(v));
}

}  // namespace

Workspace::Workspace(std::string cache_dir) : cache_dir_(std::move(cache_dir)) {}

const FieldCtx& Workspace::field(long long q) {
  auto it = fields_.find(q);
  if (it != fields_.end()) return *it->second;
  std::uint64_t p;
  int f;
  if (!factor_prime_power(static_cast<std::uint64_t>(q), p, f))
    throw std::invalid_argument("q must be a prime power: " + std::to_string(q));
  auto ctx = std::make_unique<FieldCtx>(static_cast<int>(p), f);
  return *fields_.emplace(q, std::move(ctx)).first->second;
}

const GroupTable& Workspace::table(long long q, GroupKind kind) {
  auto key = std::make_pair(q, static_cast<int>(kind));
  auto it = tables_.find(key);
  if (it != tables_.end()) return *it->second;
  auto t = std::make_unique<GroupTable>(make_group_table(field(q), kind, cache_dir_));
  return *tables_.emplace(key, std::move(t)).first->second;
}

const GroupTable& Workspace::psl(long long q) { return table(q, GroupKind::PSL); }
const GroupTable& Workspace::pgl(long long q) { return table(q, GroupKind::PGL); }

// ---------------------------------------------------------------------------
// verify-q7: exhaustive impossibility at q = 7
// ---------------------------------------------------------------------------

CensusRecord exp_verify_q7(Workspace& ws, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(7);
  const GroupTable& P = ws.pgl(7);
  CensusRecord r = start_record("verify-q7", T.ctx());

  const std::vector<std::uint32_t> V = involutions(T);
  long long n_triples = 0, n_generating = 0, n_skipped = 0, n_grr = 0;
  bool all_nonempty = true, all_with_involution = true;

  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = i + 1; j < V.size(); ++j)
      for (std::size_t k = j + 1; k < V.size(); ++k) {
        ++n_triples;
        std::uint32_t S[3] = {V[i], V[j], V[k]};
        if (closure(T, S).size() != T.size()) {
          ++n_skipped;  // disconnected Cay(G,S)
          continue;
        }
        ++n_generating;
        auto stab = set_stabilizer(T, P, S);
        if (stab.empty()) {
          all_nonempty = false;
          record_violation(r, "generating triple with trivial stabilizer",
                           triple_json(T, S));
          continue;
        }
        bool has_involution = false;
        for (const SemiAut& a : stab) {
          if (a.k != 0) continue;
          if (aut_is_identity(T.ctx(), aut_compose(T.ctx(), a, a))) {
            has_involution = true;
            break;
          }
        }
        if (!has_involution) {
          all_with_involution = false;
          record_violation(r, "stabilizer without a PGL2(7) involution",
                           triple_json(T, S));
        }
        if (is_grr_direct(T, S)) {
          ++n_grr;
          record_violation(r, "GRR found at q=7", triple_json(T, S));
        }
      }

  r.details["n_triples"] = n_triples;
  r.details["n_generating"] = n_generating;
  r.details["n_skipped_disconnected"] = n_skipped;
  r.details["n_grr"] = n_grr;
  r.details["all_stabilizers_nonempty"] = all_nonempty;
  r.details["all_with_pgl_involution"] = all_with_involution;
  return r;
}

// ---------------------------------------------------------------------------
// find-grr: existence with the canonical dihedral pair
// ---------------------------------------------------------------------------

CensusRecord exp_find_grr(Workspace& ws, long long q, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(q);
  CensusRecord r = start_record("find-grr", T.ctx());

  DihedralPair pair = max_dihedral_pair(T);
  r.details["dihedral_order"] = pair.subgroup.size();
  StabilizerProbe probe(T, pair.x, pair.y);

  const std::vector<std::uint32_t> V = involutions(T);
  bool found = false;
  std::uint32_t found_z = 0;
  for (std::uint32_t z : V) {
    if (z == pair.x || z == pair.y) continue;
    std::uint32_t S[3] = {pair.x, pair.y, z};
    if (closure(T, S).size() != T.size()) continue;
    if (!probe.triple_stab_trivial(z)) continue;
    found = true;
    found_z = z;
    break;
  }

  if (found) {
    std::uint32_t S[3] = {pair.x, pair.y, found_z};
    r.details["witness"] = triple_json(T, S);
    bool cert_thm = false, cert_direct = false;
    if (q != 11) {
      cert_thm = is_grr_thm(T, S);
      if (!cert_thm) record_violation(r, "Aut(G,S) criterion rejected the witness",
                                      triple_json(T, S));
    }
    if (q == 11 || (q <= 13 && q != 7)) {
      cert_direct = is_grr_direct(T, S);
      if (!cert_direct)
        record_violation(r, "direct graph certification failed", triple_json(T, S));
    }
    r.details["certified_thm"] = cert_thm;
    r.details["certified_direct"] = cert_direct;
    if (!cfg.export_graph_dir.empty()) {
      CayleyGraph cg = build_cayley(T, S);
      std::string path = cfg.export_graph_dir + "/cayley_q" + std::to_string(q) + ".txt";
      std::ofstream os(path);
      if (os) write_adjacency(os, cg.graph);
      r.details["exported_graph"] = path;
    }
  }
  r.details["found"] = found;

  if (q == 7) {
    if (found) record_violation(r, "GRR found at q=7", r.details["witness"]);
    r.details["none_exists"] = !found;
  } else if (!found) {
    record_violation(r, "no GRR triple found with the canonical pair",
                     json{{"q", q}});
  }
  return r;
}

// ---------------------------------------------------------------------------
// prop31: valid-z count against the closed-form bound
// ---------------------------------------------------------------------------

namespace {

json ingredient_json(const GroupTable& T, const IngredientReport& rep) {
  json j;
  j["nV"] = rep.nV;
  j["nV_in_H"] = rep.nVinH;
  j["nValidZ"] = rep.nValidZ;
  j["nL"] = rep.L.size();
  j["nI"] = rep.I.size();
  j["L_bound"] = 4LL * rep.d * rep.f * (static_cast<long long>(rep.q) + 1);
  j["boundB"] = {{"num", rep.boundB_num}, {"den", rep.boundB_den}};
  j["eq2_count"] = rep.nEq2Avoiding;
  j["eq2_bound"] = {{"num", rep.eq2_bound_num}, {"den", rep.eq2_bound_den}};
  j["maximal_certified"] = rep.maximal_certified;
  json imats = json::array();
  for (const SemiAut& a : rep.I) {
    json ja;
    ja["m"] = mat_json(T.ctx(), a.m);
    ja["k"] = a.k;
    imats.push_back(ja);
  }
  j["I"] = imats;
  return j;
}

}  // namespace

CensusRecord exp_prop31(Workspace& ws, long long q, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(q);
  CensusRecord r = start_record("prop31", T.ctx());

  DihedralPair pair = max_dihedral_pair(T);
  ValidZOptions opts;
  opts.use_maximality_shortcut = !cfg.no_shortcut;
  opts.jobs = cfg.jobs;
  IngredientReport rep = count_valid_z(T, pair, opts);
  r.details["pair"] = triple_json(T, std::array<std::uint32_t, 2>{pair.x, pair.y});
  r.details["ingredients"] = ingredient_json(T, rep);

  Rational B = bound_B(r.p, r.f);
  if (make_rational(rep.boundB_num, rep.boundB_den) != B)
    record_violation(r, "bound formula mismatch between modules", json{{"q", q}});
  if (!rational_geq_int(rep.nValidZ, B))
    record_violation(r, "nValidZ below the bound",
                     json{{"nValidZ", rep.nValidZ}, {"bound_num", B.num},
                          {"bound_den", B.den}});
  if (static_cast<long long>(rep.L.size()) > 4LL * rep.d * rep.f * (q + 1))
    record_violation(r, "|L| exceeds 4df(q+1)", json{{"nL", rep.L.size()}});
  if (static_cast<long long>(rep.I.size()) > rep.d)
    record_violation(r, "|I| exceeds d", json{{"nI", rep.I.size()}});
  if (rep.nEq2Avoiding * rep.eq2_bound_den < rep.eq2_bound_num)
    record_violation(r, "eq2 count below its bound",
                     json{{"count", rep.nEq2Avoiding}});
  return r;
}

// ---------------------------------------------------------------------------
// theorem14: exact GRR fraction vs the probability lower bound
// ---------------------------------------------------------------------------

CensusRecord exp_theorem14(Workspace& ws, long long q, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(q);
  CensusRecord r = start_record("theorem14", T.ctx());

  DihedralPair pair = max_dihedral_pair(T);
  ValidZOptions opts;
  opts.use_maximality_shortcut = !cfg.no_shortcut;
  opts.jobs = cfg.jobs;
  IngredientReport rep = count_valid_z(T, pair, opts);

  double fraction = static_cast<double>(rep.nValidZ) / static_cast<double>(rep.nV);
  double lower = prob_lower(q);
  r.details["nValidZ"] = rep.nValidZ;
  r.details["nV"] = rep.nV;
  r.details["fraction"] = fraction;
  r.details["prob_lower"] = lower;
  r.details["maximal_certified"] = rep.maximal_certified;

  if (fraction < lower - 1e-6)
    record_violation(r, "GRR fraction below prob_lower",
                     json{{"fraction", fraction}, {"prob_lower", lower}});
  if (lower > 0 && rep.nValidZ == 0)
    record_violation(r, "positive bound but zero valid z", json{{"q", q}});
  return r;
}

// ---------------------------------------------------------------------------
// prop15: mixed connection sets
// ---------------------------------------------------------------------------

CensusRecord exp_prop15(Workspace& ws, long long q, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(q);
  CensusRecord r = start_record("prop15", T.ctx());

  const std::vector<std::uint32_t> V = involutions(T);
  std::vector<std::uint32_t> highs;
  for (std::uint32_t g = 1; g < T.size(); ++g)
    if (T.order(g) > 2) highs.push_back(g);

  const bool exhaustive = q <= 13;
  const long long n_samples = cfg.samples > 0 ? cfg.samples : 1000;
  long long n_pairs = 0, n_witnessed = 0, n_certificates = 0;
  long long n_even = 0, n_1mod4 = 0, n_3mod4 = 0;

  auto run_pair = [&](std::uint32_t x, std::uint32_t y) {
    ++n_pairs;
    MixedAutResult res = mixed_nontrivial_aut(T, x, y);
    if (res.non_generating) {
      ++n_certificates;
      std::uint32_t gens[2] = {x, y};
      if (closure(T, gens).size() == T.size()) {
        record_violation(r, "non-generation certificate for a generating pair",
                         triple_json(T, gens));
        return;
      }
      return;
    }
    // mixed_nontrivial_aut already verified x^a = x and y^a = y^-1; a
    // nonidentity setwise stabilizer of {x,y,y^-1} therefore exists.
    ++n_witnessed;
    if (T.ctx().p() == 2)
      ++n_even;
    else if (q % 4 == 1)
      ++n_1mod4;
    else
      ++n_3mod4;
  };

  if (exhaustive) {
    for (std::uint32_t x : V)
      for (std::uint32_t y : highs) run_pair(x, y);
  } else {
    auto rng = make_rng(cfg.seed, q, 15);
    for (long long i = 0; i < n_samples; ++i) {
      std::uint32_t x = V[rng() % V.size()];
      std::uint32_t y = highs[rng() % highs.size()];
      run_pair(x, y);
    }
  }

  r.details["exhaustive"] = exhaustive;
  r.details["n_pairs"] = n_pairs;
  r.details["n_witnessed"] = n_witnessed;
  r.details["n_nongenerating_certificates"] = n_certificates;
  r.details["n_even"] = n_even;
  r.details["n_1mod4"] = n_1mod4;
  r.details["n_3mod4"] = n_3mod4;

  if (q == 7 || q == 8 || q == 13) {
    auto witness = remark_counterexample(T, ws.pgl(q));
    if (q == 7) {
      r.details["remark_witness_absent"] = !witness.has_value();
      if (witness)
        record_violation(r, "remark witness exists at q=7 (forbidden)",
                         json{{"x", witness->first}, {"y", witness->second}});
    } else {
      if (witness) {
        std::uint32_t pairw[2] = {witness->first, witness->second};
        r.details["remark_witness"] = triple_json(T, pairw);
      } else {
        record_violation(r, "remark witness missing", json{{"q", q}});
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// structure: Lemmas 2.1 / 2.2
// ---------------------------------------------------------------------------

CensusRecord exp_structure(Workspace& ws, long long q, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(q);
  const FieldCtx& F = T.ctx();
  CensusRecord r = start_record("structure", F);

  const std::vector<std::uint32_t> V = involutions(T);
  r.details["n_involutions"] = V.size();
  if (static_cast<long long>(V.size()) != involution_count_formula(q, F.p()))
    record_violation(r, "involution count formula mismatch",
                     json{{"count", V.size()}});

  // Single conjugacy class of involutions.
  if (conj_class(T, V.front()) != V)
    record_violation(r, "involutions split into several classes", json{{"q", q}});

  // Centralizer of an involution: order per congruence class, and the
  // expected shape (elementary abelian for p=2, dihedral otherwise).
  auto cen = centralizer(T, V.front());
  long long expect_cen = F.p() == 2 ? q : (q % 4 == 1 ? q - 1 : q + 1);
  r.details["centralizer_order"] = cen.size();
  if (static_cast<long long>(cen.size()) != expect_cen)
    record_violation(r, "centralizer order mismatch",
                     json{{"got", cen.size()}, {"want", expect_cen}});
  if (F.p() == 2) {
    bool elem_abelian = true;
    for (std::uint32_t g : cen)
      if (g != T.identity() && T.order(g) != 2) elem_abelian = false;
    for (std::uint32_t a : cen)
      for (std::uint32_t b : cen)
        if (T.mul(a, b) != T.mul(b, a)) elem_abelian = false;
    if (!elem_abelian)
      record_violation(r, "centralizer not elementary abelian at p=2", json{{"q", q}});
  } else {
    long long half = expect_cen / 2;
    bool has_rotation = false;
    for (std::uint32_t g : cen)
      if (T.order(g) == half) has_rotation = true;
    if (!has_rotation)
      record_violation(r, "centralizer has no index-2 cyclic part", json{{"q", q}});
  }

  // Lemma 2.2(c): every PGL involution centralizes at most (q+3)/2 of V.
  if (F.p() != 2) {
    const GroupTable& P = ws.pgl(q);
    long long cap = (q + 3) / 2;
    long long worst = 0;
    for (std::uint32_t a = 1; a < P.size(); ++a) {
      if (P.order(a) != 2) continue;
      ProjMat am = P.mat(a);
      ProjMat ainv = mat_inv(F, am);
      long long fixed = 0;
      for (std::uint32_t v : V)
        if (mat_mul(F, mat_mul(F, ainv, T.mat(v)), am) == T.mat(v)) ++fixed;
      worst = std::max(worst, fixed);
      if (fixed > cap) {
        record_violation(r, "PGL involution centralizing too many involutions",
                         json{{"alpha", mat_json(F, am)}, {"fixed", fixed}});
        break;
      }
    }
    r.details["max_centralized_involutions"] = worst;
    r.details["centralized_cap"] = cap;
  }

  // Dihedral pair of order 2(q+1)/d; maximal iff q not in {7,9} (checked
  // exhaustively while |G| permits).
  DihedralPair pair = max_dihedral_pair(T);
  r.details["dihedral_order"] = pair.subgroup.size();
  long long expect_h = 2 * (q + 1) / T.d();
  if (static_cast<long long>(pair.subgroup.size()) != expect_h)
    record_violation(r, "dihedral subgroup order mismatch",
                     json{{"got", pair.subgroup.size()}, {"want", expect_h}});
  if (T.order(pair.rotation) != static_cast<int>((q + 1) / T.d()))
    record_violation(r, "rotation order mismatch", json{{"q", q}});
  if (q <= 13) {
    bool maximal = is_maximal(T, pair.subgroup);
    bool expect_maximal = (q != 7 && q != 9);
    r.details["dihedral_maximal"] = maximal;
    if (maximal != expect_maximal)
      record_violation(r, "maximality disagrees with Lemma 2.1",
                       json{{"got", maximal}, {"want", expect_maximal}});
  } else {
    r.details["dihedral_maximal"] = "unchecked (q > 13)";
  }
  return r;
}

// ---------------------------------------------------------------------------
// crosscheck: is_grr_direct vs is_grr_thm
// ---------------------------------------------------------------------------

CensusRecord exp_crosscheck(Workspace& ws, long long q, const RunConfig& cfg) {
  const GroupTable& T = ws.psl(q);
  CensusRecord r = start_record("crosscheck", T.ctx());

  const std::vector<std::uint32_t> V = involutions(T);
  long long n_checked = 0, n_disagreements = 0, n_grr = 0, n_nongen = 0;

  auto check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    std::uint32_t S[3] = {a, b, c};
    bool direct = is_grr_direct(T, S);
    bool thm = is_grr_thm(T, S);
    ++n_checked;
    if (direct != thm) {
      ++n_disagreements;
      record_violation(r, "is_grr_direct != is_grr_thm", triple_json(T, S));
    } else if (direct) {
      ++n_grr;
    }
  };

  if (q <= 7) {
    for (std::size_t i = 0; i < V.size(); ++i)
      for (std::size_t j = i + 1; j < V.size(); ++j)
        for (std::size_t k = j + 1; k < V.size(); ++k) {
          std::uint32_t S[3] = {V[i], V[j], V[k]};
          if (closure(T, S).size() != T.size()) {
            ++n_nongen;
            if (is_grr_direct(T, S))
              record_violation(r, "disconnected graph reported as GRR",
                               triple_json(T, S));
            continue;
          }
          check(V[i], V[j], V[k]);
        }
    r.details["exhaustive"] = true;
  } else {
    const long long want = cfg.samples > 0 ? cfg.samples : 200;
    auto rng = make_rng(cfg.seed, q, 12);
    long long tries = 0;
    while (n_checked < want) {
      if (++tries > want * 1000)
        throw std::logic_error("crosscheck: sampling failed to find triples");
      std::size_t i = rng() % V.size(), j = rng() % V.size(), k = rng() % V.size();
      if (i == j || j == k || i == k) continue;
      std::uint32_t S[3] = {V[i], V[j], V[k]};
      if (closure(T, S).size() != T.size()) continue;
      check(S[0], S[1], S[2]);
    }
    r.details["exhaustive"] = false;
  }

  r.details["n_checked"] = n_checked;
  r.details["n_grr_agreed"] = n_grr;
  r.details["n_nongenerating"] = n_nongen;
  r.details["n_disagreements"] = n_disagreements;
  return r;
}

// ---------------------------------------------------------------------------
// runner and emitters
// ---------------------------------------------------------------------------

const std::vector<std::string>& all_experiments() {
  static const std::vector<std::string> kAll = {
      "verify-q7", "find-grr", "prop31", "theorem14",
      "prop15",    "structure", "crosscheck"};
  return kAll;
}

std::vector<long long> default_qs(const std::string& experiment) {
  if (experiment == "verify-q7") return {7};
  if (experiment == "find-grr") return {5, 8, 9, 11, 13, 16, 17, 19, 25, 27};
  if (experiment == "prop31") return {11, 13, 16, 17, 19, 23, 25, 27, 29, 31};
  if (experiment == "theorem14") return {31, 61, 127};
  if (experiment == "prop15") return {5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 27};
  if (experiment == "structure")
    return {5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31};
  if (experiment == "crosscheck") return {5, 7, 8, 9, 13};
  throw std::invalid_argument("unknown experiment: " + experiment);
}

void validate_experiment_q(const std::string& experiment, long long q) {
  std::uint64_t p;
  int f;
  if (!factor_prime_power(static_cast<std::uint64_t>(q), p, f) || q < 4)
    throw std::invalid_argument("q must be a prime power >= 4, got " +
                                std::to_string(q));
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(experiment + ": " + msg);
  };
  if (experiment == "verify-q7") need(q == 7, "only q=7 is meaningful");
  else if (experiment == "prop31" || experiment == "theorem14")
    need(q >= 11, "q >= 11 required");
  else if (experiment == "crosscheck")
    need(q == 5 || q == 7 || q == 8 || q == 9 || q == 13,
         "q must be one of {5,7,8,9,13}");
  else
    need(q >= 5, "q >= 5 required");
}

CensusRun run_census(const RunConfig& cfg) {
  CensusRun run;
  std::vector<std::string> experiments;
  for (const std::string& e : cfg.experiments) {
    if (e == "all") {
      for (const std::string& a : all_experiments()) experiments.push_back(a);
    } else {
      experiments.push_back(e);
    }
  }
  if (experiments.empty()) experiments = all_experiments();

  try {
    // Validate everything up front so bad input never half-runs.
    for (const std::string& e : experiments) {
      const auto qs = cfg.qs.empty() ? default_qs(e) : cfg.qs;
      for (long long q : qs) validate_experiment_q(e, q);
    }
  } catch (const std::invalid_argument& ex) {
    run.exit_code = 2;
    run.error = ex.what();
    return run;
  }

  Workspace ws(cfg.cache_dir);
  for (const std::string& e : experiments) {
    const auto qs = cfg.qs.empty() ? default_qs(e) : cfg.qs;
    for (long long q : qs) {
      auto t0 = std::chrono::steady_clock::now();
      CensusRecord rec;
      try {
        if (e == "verify-q7") rec = exp_verify_q7(ws, cfg);
        else if (e == "find-grr") rec = exp_find_grr(ws, q, cfg);
        else if (e == "prop31") rec = exp_prop31(ws, q, cfg);
        else if (e == "theorem14") rec = exp_theorem14(ws, q, cfg);
        else if (e == "prop15") rec = exp_prop15(ws, q, cfg);
        else if (e == "structure") rec = exp_structure(ws, q, cfg);
        else if (e == "crosscheck") rec = exp_crosscheck(ws, q, cfg);
      } catch (const std::logic_error& ex) {
        // Internal cross-checks double as claims; a failure is a violation.
        rec.experiment = e;
        rec.q = q;
        record_violation(rec, std::string("exception: ") + ex.what(), json{{"q", q}});
      }
      auto t1 = std::chrono::steady_clock::now();
      rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      if (!rec.confirmed) run.exit_code = 1;
      run.records.push_back(std::move(rec));
    }
  }
  return run;
}

json header_json(const RunConfig& cfg) {
  json h;
  h["record"] = "header";
  h["tool"] = "grrlab";
  h["version"] = "1.0.0";
  h["seed"] = cfg.seed;
  h["samples"] = cfg.samples;
  h["jobs"] = cfg.jobs;
  h["shortcut"] = !cfg.no_shortcut;
  h["experiments"] = cfg.experiments.empty()
                         ? json(all_experiments())
                         : json(cfg.experiments);
  h["qs"] = cfg.qs;
  return h;
}

json record_json(const CensusRecord& r, bool timings) {
  json j;
  j["record"] = "census";
  j["experiment"] = r.experiment;
  j["q"] = r.q;
  j["p"] = r.p;
  j["f"] = r.f;
  j["d"] = r.d;
  j["status"] = r.confirmed ? "confirmed" : "violated";
  j["details"] = r.details;
  if (timings) j["runtime_ms"] = r.runtime_ms;
  return j;
}

namespace {

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

void emit_records(std::ostream& os, const RunConfig& cfg,
                  const std::vector<CensusRecord>& records) {
  const json header = header_json(cfg);
  switch (cfg.emit) {
    case EmitFormat::Json: {
      os << header.dump() << "\n";
      for (const auto& r : records) os << record_json(r, cfg.timings).dump() << "\n";
      break;
    }
    case EmitFormat::Csv: {
      os << "record,experiment,q,p,f,d,status,details\n";
      os << "header,,,,,,," << csv_escape(header.dump()) << "\n";
      for (const auto& r : records) {
        json j = record_json(r, cfg.timings);
        os << "census," << r.experiment << "," << r.q << "," << r.p << "," << r.f
           << "," << r.d << "," << (r.confirmed ? "confirmed" : "violated") << ","
           << csv_escape(j["details"].dump()) << "\n";
      }
      break;
    }
    case EmitFormat::Md: {
      os << "# grrlab census report\n\n";
      os << "config: `" << header.dump() << "`\n\n";
      os << "| experiment | q | p | f | d | status | details |\n";
      os << "|---|---|---|---|---|---|---|\n";
      for (const auto& r : records) {
        json j = record_json(r, cfg.timings);
        std::string det = j["details"].dump();
        for (char& c : det)
          if (c == '|') c = '/';
        os << "| " << r.experiment << " | " << r.q << " | " << r.p << " | " << r.f
           << " | " << r.d << " | " << (r.confirmed ? "confirmed" : "violated")
           << " | `" << det << "` |\n";
      }
      break;
    }
  }
}

std::vector<long long> parse_q_spec(const std::string& spec) {
  std::vector<long long> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto dots = tok.find("..");
    if (dots != std::string::npos) {
      long long lo = std::stoll(tok.substr(0, dots));
      long long hi = std::stoll(tok.substr(dots + 2));
      for (long long q = lo; q <= hi; ++q) {
        std::uint64_t p;
        int f;
        if (factor_prime_power(static_cast<std::uint64_t>(q), p, f)) out.push_back(q);
      }
    } else {
      out.push_back(std::stoll(tok));
    }
  }
  return out;
}

}  // namespace grr
