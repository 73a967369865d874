#include "prosmooth/json_io.hpp"

#include <fstream>
#include <sstream>

#include "prosmooth/errors.hpp"

namespace prosmooth {

namespace {

const Json& require_key(const Json& j, const char* key, const char* where) {
  if (!j.is_object())
    throw bad_parameters(std::string(where) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw bad_parameters(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

std::uint64_t as_u64(const Json& j, const char* what) {
  if (!j.is_number_integer() || (j.is_number_integer() && j.get<long long>() < 0))
    throw bad_parameters(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::vector<std::uint64_t> as_u64_vector(const Json& j, const char* what) {
  if (!j.is_array())
    throw bad_parameters(std::string(what) + ": expected an array");
  std::vector<std::uint64_t> out;
  for (const Json& e : j) out.push_back(as_u64(e, what));
  return out;
}

Json witness_to_json(const CocycleWitness& w) {
  return Json{{"level", w.level},
              {"missed", w.missed},
              {"torsion_exponent", w.torsion_exponent}};
}

CocycleWitness witness_from_json(const Json& j) {
  CocycleWitness w;
  w.level = (unsigned)as_u64(require_key(j, "level", "cocycle witness"),
                             "witness level");
  w.missed = as_u64_vector(require_key(j, "missed", "cocycle witness"),
                           "witness missed class");
  w.torsion_exponent = (unsigned)as_u64(
      require_key(j, "torsion_exponent", "cocycle witness"),
      "witness torsion exponent");
  return w;
}

}  // namespace

Json presentation_to_json(const Presentation& pres) {
  Json gens = Json::array();
  for (const std::string& name : pres.gens.names()) gens.push_back(name);
  Json rels = Json::array();
  for (const Word& r : pres.relators) rels.push_back(print_word(r));
  return Json{{"p", pres.p}, {"generators", gens}, {"relators", rels}};
}

Json pair_to_json(const CyclotomicPair& pair) {
  Json j = presentation_to_json(pair.presentation);
  j["theta"] = theta_to_json(pair.orientation);
  return j;
}

CyclotomicPair pair_from_json(const Json& j, unsigned fallback_precision) {
  std::uint64_t p = as_u64(require_key(j, "p", "pair file"), "pair file p");

  const Json& jgens = require_key(j, "generators", "pair file");
  if (!jgens.is_array())
    throw bad_parameters("pair file generators: expected an array of names");
  std::vector<std::string> names;
  for (const Json& g : jgens) {
    if (!g.is_string())
      throw bad_parameters("pair file generators: expected an array of names");
    names.push_back(g.get<std::string>());
  }
  GenTable gens(std::move(names));

  Orientation theta = [&] {
    auto it = j.find("theta");
    if (it == j.end())
      return Orientation::trivial(gens, PrimeCtx(p, fallback_precision));
    return theta_from_json(*it, gens, p);
  }();

  const Json& jrels = require_key(j, "relators", "pair file");
  if (!jrels.is_array())
    throw bad_parameters("pair file relators: expected an array of words");
  std::vector<Word> relators;
  for (const Json& r : jrels) {
    if (!r.is_string())
      throw bad_parameters("pair file relators: expected an array of words");
    relators.push_back(parse_word(r.get<std::string>(), gens));
  }

  return CyclotomicPair(Presentation(p, gens, std::move(relators)),
                        std::move(theta));
}

CyclotomicPair load_pair_file(const std::string& path,
                              unsigned fallback_precision) {
  std::ifstream in(path);
  if (!in) throw bad_parameters("cannot open pair file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw bad_parameters("pair file '" + path + "' is not valid JSON: " +
                         e.what());
  }
  return pair_from_json(j, fallback_precision);
}

Json theta_to_json(const Orientation& theta) {
  Json values = Json::object();
  for (std::size_t i = 0; i < theta.size(); ++i)
    values[theta.table().name(i)] = theta.value(i).value();
  return Json{{"precision", theta.ctx().n}, {"values", values}};
}

Orientation theta_from_json(const Json& j, const GenTable& gens,
                            std::uint64_t p) {
  unsigned precision =
      (unsigned)as_u64(require_key(j, "precision", "theta"), "theta precision");
  if (precision < 1) throw bad_parameters("theta precision must be >= 1");
  PrimeCtx ctx(p, precision);

  std::vector<std::uint64_t> values(gens.size(), 1);
  auto it = j.find("values");
  if (it != j.end()) {
    if (!it->is_object())
      throw bad_parameters("theta values: expected an object keyed by name");
    for (const auto& [name, val] : it->items())
      values[gens.index_of(name)] = as_u64(val, ("theta value of '" + name +
                                                 "'").c_str());
  }
  return Orientation::from_values(gens, values, ctx);
}

Json verdict_to_json(const Verdict& v) {
  Json j{{"outcome", outcome_name(v.outcome)},
         {"level", v.level},
         {"passed_levels", v.passed_levels}};
  if (!v.certificate.empty()) j["certificate"] = v.certificate;
  if (v.cocycle_witness) j["cocycle_witness"] = witness_to_json(*v.cocycle_witness);
  if (v.subgroup_witness) {
    Json chain = Json::array();
    for (const auto& phi : v.subgroup_witness->phi_chain) chain.push_back(phi);
    j["subgroup_witness"] = Json{
        {"phi_chain", chain},
        {"inner", witness_to_json(v.subgroup_witness->inner)}};
  }
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  std::string name = require_key(j, "outcome", "verdict").get<std::string>();
  if (name == outcome_name(Outcome::certified_yes))
    v.outcome = Outcome::certified_yes;
  else if (name == outcome_name(Outcome::certified_no))
    v.outcome = Outcome::certified_no;
  else if (name == outcome_name(Outcome::undecided))
    v.outcome = Outcome::undecided;
  else
    throw bad_parameters("verdict outcome '" + name + "' is not recognized");

  v.level = (unsigned)as_u64(require_key(j, "level", "verdict"), "verdict level");
  for (std::uint64_t m : as_u64_vector(
           require_key(j, "passed_levels", "verdict"), "verdict passed_levels"))
    v.passed_levels.push_back((unsigned)m);

  if (auto it = j.find("certificate"); it != j.end())
    v.certificate = it->get<std::string>();
  if (auto it = j.find("cocycle_witness"); it != j.end())
    v.cocycle_witness = witness_from_json(*it);
  if (auto it = j.find("subgroup_witness"); it != j.end()) {
    SubgroupWitness sw;
    const Json& chain = require_key(*it, "phi_chain", "subgroup witness");
    if (!chain.is_array())
      throw bad_parameters("subgroup witness phi_chain: expected an array");
    for (const Json& phi : chain)
      sw.phi_chain.push_back(as_u64_vector(phi, "subgroup witness functional"));
    sw.inner = witness_from_json(require_key(*it, "inner", "subgroup witness"));
    v.subgroup_witness = std::move(sw);
  }
  return v;
}

Json survey_to_json(const std::vector<SurveyRow>& rows, std::uint64_t p) {
  Json out = Json::array();
  for (const SurveyRow& row : rows) {
    std::uint64_t index = 1;
    Json chain = Json::array();
    for (const auto& phi : row.phi_chain) {
      chain.push_back(phi);
      index *= p;
    }
    out.push_back(Json{{"phi_chain", chain},
                       {"index", index},
                       {"rank", row.rank},
                       {"verdict", verdict_to_json(row.verdict)}});
  }
  return out;
}

Json sweep_to_json(const std::vector<SweepEntry>& entries) {
  Json list = Json::array();
  std::size_t yes = 0, no = 0, open = 0;
  for (const SweepEntry& e : entries) {
    list.push_back(Json{{"theta", theta_to_json(e.theta)},
                        {"verdict", verdict_to_json(e.verdict)}});
    switch (e.verdict.outcome) {
      case Outcome::certified_yes: ++yes; break;
      case Outcome::certified_no: ++no; break;
      case Outcome::undecided: ++open; break;
    }
  }
  return Json{{"entries", list},
              {"summary", Json{{"total", entries.size()},
                               {"certified_yes", yes},
                               {"certified_no", no},
                               {"undecided", open}}}};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace prosmooth
