// Command-line front end: builds the family presentations, computes homology,
// runs coset enumeration, searches for and verifies non-left-orderability
// certificates, and replays the lemma identities. JSON on stdout, human
// summaries on stderr. Exit codes: 0 informative result, 1 internal error,
// 2 usage error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <branchorder/branchorder.hpp>

namespace {

using namespace branchorder;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

struct CommonOptions {
  std::string k_list;
  int n = 0;  // 0: infer from k
  std::string form = "standard";
  bool no_timestamp = false;
  SearchBudget budget;

  FamilyParams params() const {
    std::vector<std::int64_t> k;
    std::stringstream ss(k_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw UsageError("empty entry in --k list");
      try {
        std::size_t used = 0;
        k.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("cannot parse '" + item + "' as an integer");
      }
    }
    if (k.empty()) throw UsageError("--k must list at least one integer");
    int inferred = static_cast<int>(k.size());
    if (n != 0 && n != inferred)
      throw UsageError("--n disagrees with the number of --k entries");
    return FamilyParams{inferred, std::move(k)};
  }

  Presentation presentation() const {
    FamilyParams p = params();
    if (form == "raw") return build_raw_presentation(p);
    if (form == "standard") return build_standard_presentation(p);
    throw UsageError("--form must be raw or standard");
  }

  void stamp(json& out) const {
    if (!no_timestamp) out["timestamp"] = iso_timestamp();
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_form = true) {
  cmd->add_option("--k", opt.k_list, "comma-separated twist parameters k1,...,kn")
      ->required();
  cmd->add_option("--n", opt.n, "number of tangles (inferred from --k when omitted)");
  if (with_form)
    cmd->add_option("--form", opt.form, "presentation form: raw | standard")
        ->check(CLI::IsMember({"raw", "standard"}));
  cmd->add_flag("--no-timestamp", opt.no_timestamp,
                "omit volatile fields for byte-stable output");
  cmd->add_option("--budget", opt.budget.max_states, "max states in rewriting searches");
  cmd->add_option("--max-word-length", opt.budget.max_word_length,
                  "max syllables per intermediate word");
  cmd->add_option("--max-cosets", opt.budget.max_cosets, "max cosets ever defined");
  cmd->add_option("--max-witnesses", opt.budget.max_witnesses,
                  "max branching elements in the cone search");
  cmd->add_option("--chain-cap", opt.budget.max_chain_factors,
                  "max factors in a contradiction chain");
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

unsigned thread_cap() {
  const char* env = std::getenv("BRANCHORDER_THREADS");
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (!env) return hw;
  try {
    std::size_t used = 0;
    std::string s(env);
    long v = std::stol(s, &used);
    if (used != s.size() || v < 1) throw std::invalid_argument(s);
    return static_cast<unsigned>(std::min<long>(v, hw));
  } catch (const std::exception&) {
    throw UsageError("BRANCHORDER_THREADS must be a positive integer");
  }
}

int cmd_present(const CommonOptions& opt) {
  Presentation P = opt.presentation();
  json out = presentation_to_json(P);
  if (auto tag = pretzel_cover_tag(opt.params()))
    out["pretzel_cover"] = {{"n", tag->n},
                            {"k", tag->k},
                            {"pretzel_parameters", {3, -3, -(2 * tag->k + 1)}}};
  opt.stamp(out);
  emit(out);
  std::cerr << P.label() << " presentation: " << P.generator_count() << " generators, "
            << P.relators().size() << " relators\n";
  return kExitOk;
}

int cmd_homology(const CommonOptions& opt) {
  Presentation P = opt.presentation();
  SnfResult snf = smith_normal_form(abelianize(P));
  json out = homology_to_json(snf);
  opt.stamp(out);
  emit(out);
  std::cerr << "H1 of " << P.label() << ": order " << out["order"].dump() << "\n";
  return kExitOk;
}

int cmd_coset(const CommonOptions& opt) {
  Presentation P = opt.presentation();
  CosetTable table = todd_coxeter(P, opt.budget);
  json out = coset_to_json(table);
  opt.stamp(out);
  emit(out);
  if (table.complete())
    std::cerr << "group order " << table.cosets << " (" << table.cosets_defined
              << " cosets defined)\n";
  else
    std::cerr << "enumeration exceeded " << opt.budget.max_cosets << " cosets\n";
  return kExitOk;
}

int cmd_certify(const CommonOptions& opt, std::size_t radius, const std::string& out_path) {
  Presentation P = build_standard_presentation(opt.params());
  json summary;
  auto write_certificate = [&](const NloCertificate& cert) {
    json doc = certificate_to_json(P.alphabet(), cert);
    doc["format"] = "branchorder-nlo-certificate-v1";
    doc["label"] = P.label();
    std::ofstream file(out_path);
    if (!file) throw UsageError("cannot write certificate to " + out_path);
    file << doc.dump(2) << "\n";
    file.flush();
    if (!file) throw UsageError("cannot write certificate to " + out_path);
    summary["certificate_path"] = out_path;
    summary["witness_count"] = cert.witness.size();
  };

  auto shortcut = finite_group_shortcut(P, opt.budget);
  if (auto* cert = std::get_if<NloCertificate>(&shortcut)) {
    write_certificate(*cert);
    summary["status"] = "certified";
    summary["method"] = "finite-shortcut";
    std::cerr << "certified non-left-orderable via torsion witness\n";
  } else {
    auto na = std::get<NotApplicable>(shortcut);
    if (na.reason == NotApplicable::Reason::trivial_group) {
      summary["status"] = "trivial-group";
      summary["note"] =
          "group proven trivial; left-orderability is defined for nontrivial groups only";
      std::cerr << "group is trivial; reported as non-left-orderable by convention\n";
    } else {
      auto res = nlo_search(P, radius, opt.budget, /*use_shortcut=*/false);
      if (auto* cert = std::get_if<NloCertificate>(&res)) {
        write_certificate(*cert);
        summary["status"] = "certified";
        summary["method"] = "cone-search";
        std::cerr << "certified non-left-orderable via positive-cone contradiction\n";
      } else {
        summary["status"] = "inconclusive";
        summary["note"] = std::get<Inconclusive>(res).note;
        summary["radius"] = radius;
        std::cerr << "inconclusive at radius " << radius << "\n";
      }
    }
  }
  opt.stamp(summary);
  emit(summary);
  return kExitOk;
}

int cmd_verify(const CommonOptions& opt, const std::string& cert_path) {
  Presentation P = build_standard_presentation(opt.params());
  std::ifstream file(cert_path);
  if (!file) throw UsageError("cannot read certificate " + cert_path);
  json out;
  try {
    json doc = json::parse(file);
    NloCertificate cert = certificate_from_json(P.alphabet(), doc);
    VerifyOutcome outcome = verify_certificate(P, cert);
    out["result"] = outcome.accepted ? "accept" : "reject";
    if (!outcome.accepted) {
      out["reason"] = outcome.reason;
      out["path"] = outcome.path;
    }
  } catch (const json::exception& e) {
    out["result"] = "reject";
    out["reason"] = std::string("malformed certificate: ") + e.what();
  } catch (const std::invalid_argument& e) {
    out["result"] = "reject";
    out["reason"] = std::string("malformed certificate: ") + e.what();
  }
  opt.stamp(out);
  emit(out);
  std::cerr << "certificate " << out["result"].get<std::string>() << "ed\n";
  return kExitOk;
}

int cmd_replay(const CommonOptions& opt, std::int64_t m_from, std::int64_t m_to) {
  auto report = replay_suite(opt.params(), m_from, m_to, opt.budget, thread_cap());
  json out = replay_report_to_json(report, /*include_millis=*/!opt.no_timestamp);
  emit(out);
  int proved = 0, unknown = 0, error = 0;
  for (const auto& e : report) {
    if (e.status == "proved") ++proved;
    if (e.status == "unknown") ++unknown;
    if (e.status == "error") ++error;
  }
  std::cerr << report.size() << " identity instances: " << proved << " proved, " << unknown
            << " unknown, " << error << " error\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fundamental groups of branched double covers of L(k1,...,kn): "
               "presentations, homology, coset enumeration and "
               "non-left-orderability certificates"};
  app.require_subcommand(1);

  CommonOptions present_opt, homology_opt, coset_opt, certify_opt, verify_opt, replay_opt;
  std::size_t radius = 2;
  std::string out_path = "certificate.json";
  std::string cert_path;
  std::int64_t m_from = -4, m_to = 4;

  auto* present = app.add_subcommand("present", "emit a presentation as JSON");
  add_common(present, present_opt);

  auto* homology = app.add_subcommand("homology", "invariant factors and |H1|");
  add_common(homology, homology_opt);

  auto* coset = app.add_subcommand("coset", "bounded Todd-Coxeter enumeration");
  add_common(coset, coset_opt);

  auto* certify = app.add_subcommand(
      "certify", "search for a non-left-orderability certificate (standard form)");
  add_common(certify, certify_opt, /*with_form=*/false);
  certify->add_option("--radius", radius, "ball radius for the cone search");
  certify->add_option("--out", out_path, "certificate output path");

  auto* verify = app.add_subcommand("verify", "independently check a certificate");
  add_common(verify, verify_opt, /*with_form=*/false);
  verify->add_option("--cert", cert_path, "certificate file to check")->required();

  auto* replay = app.add_subcommand("replay", "replay the lemma word identities");
  add_common(replay, replay_opt, /*with_form=*/false);
  replay->add_option("--m-from", m_from, "lowest exponent parameter");
  replay->add_option("--m-to", m_to, "highest exponent parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (present->parsed()) return cmd_present(present_opt);
    if (homology->parsed()) return cmd_homology(homology_opt);
    if (coset->parsed()) return cmd_coset(coset_opt);
    if (certify->parsed()) return cmd_certify(certify_opt, radius, out_path);
    if (verify->parsed()) return cmd_verify(verify_opt, cert_path);
    if (replay->parsed()) return cmd_replay(replay_opt, m_from, m_to);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
