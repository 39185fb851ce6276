#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <branchorder/coset.hpp>
#include <branchorder/homology.hpp>
#include <branchorder/identities.hpp>
#include <branchorder/orderability.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/proof.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

using json = nlohmann::json;

// Words serialize as arrays of [name, exponent] pairs.
inline json word_to_json(const Alphabet& alphabet, const Word& w) {
  json out = json::array();
  for (const auto& s : w.syllables()) out.push_back({alphabet.name(s.gen), s.exp});
  return out;
}

inline Word word_from_json(const Alphabet& alphabet, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("word must be a JSON array");
  std::vector<Syllable> raw;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_number_integer())
      throw std::invalid_argument("word syllable must be [name, integer exponent]");
    auto id = alphabet.id_of(item[0].get<std::string>());
    if (!id) throw std::invalid_argument("unknown generator: " + item[0].get<std::string>());
    raw.push_back(Syllable{*id, item[1].get<std::int64_t>()});
  }
  return free_reduce(raw);
}

// {"generators": [names], "relators": [[[name, exp], ...], ...], "label": s}
inline json presentation_to_json(const Presentation& P) {
  json out;
  out["generators"] = P.alphabet().names();
  json relators = json::array();
  for (const auto& r : P.relators_as_given()) relators.push_back(word_to_json(P.alphabet(), r));
  out["relators"] = relators;
  out["label"] = P.label();
  return out;
}

inline Presentation presentation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw std::invalid_argument("presentation needs generators and relators");
  Alphabet alphabet(j.at("generators").get<std::vector<std::string>>());
  std::vector<Word> relators;
  for (const auto& r : j.at("relators")) relators.push_back(word_from_json(alphabet, r));
  std::string label = j.value("label", std::string{});
  return Presentation(std::move(alphabet), std::move(relators), std::move(label));
}

inline json proof_to_json(const Alphabet& alphabet, const EqualityProof& proof) {
  json steps = json::array();
  for (const auto& s : proof.steps)
    steps.push_back({{"position", s.position},
                     {"relator", s.relator},
                     {"rotation", s.rotation},
                     {"inverted", s.inverted}});
  return json{{"start", word_to_json(alphabet, proof.start)},
              {"end", word_to_json(alphabet, proof.end)},
              {"steps", steps}};
}

inline EqualityProof proof_from_json(const Alphabet& alphabet, const json& j) {
  EqualityProof proof;
  proof.start = word_from_json(alphabet, j.at("start"));
  proof.end = word_from_json(alphabet, j.at("end"));
  for (const auto& s : j.at("steps")) {
    ProofStep step;
    step.position = s.at("position").get<std::size_t>();
    step.relator = s.at("relator").get<std::size_t>();
    step.rotation = s.at("rotation").get<std::size_t>();
    step.inverted = s.at("inverted").get<bool>();
    proof.steps.push_back(step);
  }
  return proof;
}

// Tree nodes: {"element": word, "positive": subtree, "negative": subtree};
// leaves: {"chain": [words], "proof": proof}.
inline json cert_tree_to_json(const Alphabet& alphabet, const CertTree& tree) {
  if (tree.is_leaf()) {
    json chain = json::array();
    for (const auto& w : tree.leaf->chain) chain.push_back(word_to_json(alphabet, w));
    return json{{"chain", chain}, {"proof", proof_to_json(alphabet, tree.leaf->proof)}};
  }
  return json{{"element", word_to_json(alphabet, tree.node->element)},
              {"positive", cert_tree_to_json(alphabet, tree.node->positive)},
              {"negative", cert_tree_to_json(alphabet, tree.node->negative)}};
}

inline CertTree cert_tree_from_json(const Alphabet& alphabet, const json& j) {
  CertTree tree;
  if (j.contains("chain")) {
    CertLeaf leaf;
    for (const auto& w : j.at("chain")) leaf.chain.push_back(word_from_json(alphabet, w));
    leaf.proof = proof_from_json(alphabet, j.at("proof"));
    tree.leaf = std::move(leaf);
    return tree;
  }
  tree.node = std::make_unique<CertNode>();
  tree.node->element = word_from_json(alphabet, j.at("element"));
  tree.node->positive = cert_tree_from_json(alphabet, j.at("positive"));
  tree.node->negative = cert_tree_from_json(alphabet, j.at("negative"));
  return tree;
}

inline json certificate_to_json(const Alphabet& alphabet, const NloCertificate& cert) {
  json witness = json::array();
  for (const auto& w : cert.witness) witness.push_back(word_to_json(alphabet, w));
  return json{{"witness", witness}, {"tree", cert_tree_to_json(alphabet, cert.tree)}};
}

inline NloCertificate certificate_from_json(const Alphabet& alphabet, const json& j) {
  NloCertificate cert;
  for (const auto& w : j.at("witness")) cert.witness.push_back(word_from_json(alphabet, w));
  cert.tree = cert_tree_from_json(alphabet, j.at("tree"));
  return cert;
}

inline json mpz_to_json(const mpz_class& value) {
  if (value.fits_slong_p()) return json(value.get_si());
  return json(value.get_str());
}

// {"invariant_factors": [...], "free_rank": r, "order": N or "infinite"}
inline json homology_to_json(const SnfResult& snf) {
  json factors = json::array();
  mpz_class order = 1;
  for (const auto& d : snf.invariant_factors) {
    factors.push_back(mpz_to_json(d));
    order *= d;
  }
  json out;
  out["invariant_factors"] = factors;
  out["free_rank"] = snf.free_rank;
  if (snf.free_rank > 0)
    out["order"] = "infinite";
  else
    out["order"] = mpz_to_json(order);
  return out;
}

// {"status": "finite"|"exceeded", "order": N?, "cosets_defined": M}
inline json coset_to_json(const CosetTable& table) {
  json out;
  out["status"] = table.complete() ? "finite" : "exceeded";
  if (table.complete()) out["order"] = table.cosets;
  out["cosets_defined"] = table.cosets_defined;
  return out;
}

inline json replay_report_to_json(const std::vector<ReplayEntry>& report,
                                  bool include_millis = true) {
  json out = json::array();
  for (const auto& e : report)
    out.push_back({{"identity", e.identity},
                   {"i", e.i},
                   {"m", e.m},
                   {"status", e.status},
                   {"proof_steps", e.proof_steps},
                   {"millis", include_millis ? e.millis : 0}});
  return out;
}

}  // namespace branchorder
