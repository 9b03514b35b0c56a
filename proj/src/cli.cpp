#include "pingpong/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pingpong/io.hpp"

namespace pingpong {

namespace {

using Clock = std::chrono::steady_clock;

long long micros_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

struct Output {
  std::ostream& out;
  std::ostream& err;
  std::string file;

  int emit(const Json& report, int code) {
    const std::string text = report.dump(2);
    out << text << '\n';
    if (!file.empty()) {
      std::ofstream f(file);
      if (!f) {
        err << "error: cannot write " << file << '\n';
        return kExitInvalidInput;
      }
      f << text << '\n';
    }
    return code;
  }
};

std::string kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

std::vector<Integer> parse_integer_list(const std::vector<std::string>& items, const std::string& what) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    out.push_back(integer_from_json(Json(items[i]), what + "[" + std::to_string(i) + "]"));
  return out;
}

Json player_summary(const Player& p) {
  Json j;
  j["name"] = p.name;
  j["cusp"] = to_json(p.cusp.v);
  const auto& b = p.chart.basis();
  Json w = Json::array();
  for (const auto& wk : b.w) w.push_back(to_json(wk));
  j["basis"] = {{"v", to_json(b.v)}, {"w", std::move(w)}, {"u", to_json(b.u)}, {"gram_n", to_json(b.gram_n)}};
  Json gens = Json::array();
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    BlockForm f = block_decompose(p.generators[k], b);
    gens.push_back({{"matrix", to_json(p.generators[k].matrix())},
                    {"block", {{"a", to_json(f.a)}, {"A", to_json(f.A)}, {"b", to_json(f.b)}, {"c", to_json(f.c)},
                               {"d", to_json(f.d)}}},
                    {"order", p.parts[k].order},
                    {"power", p.parts[k].power},
                    {"translation", to_json(p.parts[k].t)}});
  }
  j["generators"] = std::move(gens);
  const auto& tl = p.translations;
  Json basis = Json::array();
  for (const auto& v : tl.basis) basis.push_back(to_json(v));
  j["translation_lattice"] = {{"denominator", to_string(tl.denominator)},
                              {"rank", tl.rank},
                              {"basis_times_denominator", std::move(basis)},
                              {"lambda1", to_json(tl.lambda1)},
                              {"shortest", to_json(tl.shortest)},
                              {"lower_bound", to_json(p.ell)},
                              {"independent_generators", p.independent}};
  return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ping-pong certificates for parabolic subgroups of lattice isometries"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_file;
  app.add_option("-o,--output", output_file, "Also write the JSON report to this file");

  std::string problem_path;
  std::vector<std::string> radii_items;
  unsigned depth = 0;
  std::string convention_flag;
  auto* certify = app.add_subcommand("certify", "Certify a free product by ping-pong");
  certify->add_option("file", problem_path, "Problem file")->required();
  certify->add_option("--radii", radii_items, "Neighbourhood radii R1,R2,...")->delimiter(',');
  certify->add_option("--depth", depth, "Maximal bisection depth of the transport search");
  certify->add_option("--exponent-convention", convention_flag, "m or 2m")->check(CLI::IsMember({"m", "2m"}));

  std::vector<std::string> exponent_items;
  std::size_t max_syllables = 0;
  std::string mode_flag;
  long exponent_box = 0;
  unsigned long long budget = 0;
  auto* falsify = app.add_subcommand("falsify", "Search for relations among the powered players");
  falsify->add_option("file", problem_path, "Problem file")->required();
  falsify->add_option("--exponents", exponent_items, "Exponents c1,c2,...")->delimiter(',')->required();
  falsify->add_option("--max-syllables", max_syllables, "Syllable budget B")->required();
  falsify->add_option("--mode", mode_flag, "exact or projective")->check(CLI::IsMember({"exact", "projective"}));
  falsify->add_option("--exponent-box", exponent_box, "Syllable exponents range over [-E, E]");
  falsify->add_option("--budget", budget, "Maximal number of words examined");
  falsify->add_option("--exponent-convention", convention_flag, "m or 2m")->check(CLI::IsMember({"m", "2m"}));

  std::string player_name;
  auto* analyze = app.add_subcommand("analyze-stabilizer", "Block forms, orders and translation lattice of a player");
  analyze->add_option("file", problem_path, "Problem file")->required();
  analyze->add_option("--player", player_name, "Player name")->required();
  analyze->add_option("--exponent-convention", convention_flag, "m or 2m")->check(CLI::IsMember({"m", "2m"}));

  long demo_n = 0;
  auto* demo = app.add_subcommand("moebius-demo", "Ping-pong for <f1^n, f2^n> acting on the Riemann sphere");
  demo->add_option("--n", demo_n, "Exponent n >= 1")->required();

  std::string cert_path;
  auto* re = app.add_subcommand("recheck", "Re-verify a stored certificate without search");
  re->add_option("certificate", cert_path, "Certificate or certify report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInvalidInput;
  }

  Output sink{out, err, output_file};
  const auto t0 = Clock::now();
  std::string command = app.get_subcommands().front()->get_name();
  std::string digest;
  try {
    if (demo->parsed()) {
      digest = fnv1a_hex("moebius-demo n=" + std::to_string(demo_n));
      MoebiusPingPong r = verify_moebius_pingpong(demo_n);
      Json timings{{"total_us", micros_since(t0)}};
      if (r.certified) return sink.emit(make_report(command, "certified", digest, moebius_pingpong_to_json(r), timings), 0);
      if (!r.witness.empty())
        return sink.emit(make_report(command, "relation_found", digest, moebius_pingpong_to_json(r), timings),
                         kExitRelationFound);
      return sink.emit(make_report(command, "undecided", digest, moebius_pingpong_to_json(r), timings), kExitUndecided);
    }

    if (re->parsed()) {
      Json doc = load_json(cert_path);
      const Json& cj = doc.contains("payload") && doc["payload"].contains("certificate")
                           ? doc["payload"]["certificate"]
                           : doc;
      Certificate cert = certificate_from_json(cj);
      digest = cert.input_digest;
      RecheckResult r = recheck_certificate_json(cj);
      Json payload{{"verified", r.ok}, {"failures", r.failures}, {"leaves_evaluated", r.nodes_evaluated},
                   {"conclusion", cert.conclusion}};
      Json timings{{"total_us", micros_since(t0)}};
      if (!r.ok) {
        for (const auto& f : r.failures) err << "recheck: " << f << '\n';
        return sink.emit(make_report(command, "invalid_input", digest, payload, timings), kExitInvalidInput);
      }
      return sink.emit(make_report(command, "certified", digest, payload, timings), kExitSuccess);
    }

    ProblemFile pf = load_problem(problem_path);
    digest = problem_digest(pf.problem);
    ExponentConvention convention = pf.options.convention.value_or(ExponentConvention::m);
    if (!convention_flag.empty()) convention = convention_from_string(convention_flag);

    if (certify->parsed()) {
      CertifyOptions opts;
      opts.convention = convention;
      opts.radii = pf.options.radii;
      if (!radii_items.empty()) {
        opts.radii.emplace();
        for (std::size_t i = 0; i < radii_items.size(); ++i)
          opts.radii->push_back(rational_from_json(Json(radii_items[i]), "--radii[" + std::to_string(i) + "]"));
      }
      opts.basepoint = pf.options.basepoint;
      if (pf.options.depth) opts.transport.max_depth = *pf.options.depth;
      if (depth) opts.transport.max_depth = depth;
      auto r = certify_free_product(pf.problem, opts);
      Json timings{{"total_us", micros_since(t0)}};
      if (auto* c = std::get_if<Certificate>(&r)) {
        Json payload{{"conclusion", c->conclusion}, {"certificate", certificate_to_json(*c)}};
        return sink.emit(make_report(command, "certified", digest, payload, timings), kExitSuccess);
      }
      Json payload{{"reason", std::get<Undecided>(r).reason}};
      return sink.emit(make_report(command, "undecided", digest, payload, timings), kExitUndecided);
    }

    Lattice lattice = Lattice::validate(pf.problem.gram, pf.problem.anchor);
    if (analyze->parsed()) {
      for (const auto& spec : pf.problem.players)
        if (spec.name == player_name) {
          Player p = build_player(lattice, spec, convention);
          Json timings{{"total_us", micros_since(t0)}};
          return sink.emit(make_report(command, "success", digest, player_summary(p), timings), kExitSuccess);
        }
      throw invalid_input("unknown player '" + player_name + "'");
    }

    // falsify
    std::vector<Player> players;
    for (const auto& spec : pf.problem.players) players.push_back(build_player(lattice, spec, convention, false));
    std::vector<Integer> exps = parse_integer_list(exponent_items, "--exponents");
    if (exps.size() != players.size())
      throw invalid_input("dimension mismatch: " + std::to_string(exps.size()) + " exponents for " +
                          std::to_string(players.size()) + " players");
    WordGroup group = make_word_group(players, exps);
    FalsifyOptions fo;
    fo.max_syllables = max_syllables;
    fo.mode = pf.options.mode.value_or(RelationMode::exact);
    if (!mode_flag.empty()) fo.mode = mode_from_string(mode_flag);
    fo.exponent_box = exponent_box ? exponent_box : pf.options.exponent_box.value_or(2);
    fo.budget = budget ? budget : pf.options.budget.value_or(fo.budget);
    FalsifyResult r = falsify_relations(group, fo);
    Json timings{{"total_us", micros_since(t0)}};
    Json payload{{"exponents", Json::array()}, {"mode", to_string(fo.mode)}, {"exponent_box", fo.exponent_box},
                 {"max_syllables", fo.max_syllables}};
    for (const auto& e : exps) payload["exponents"].push_back(to_string(e));
    if (r.witness) {
      payload["witness"] = word_to_json(*r.witness, group);
      payload["witness_text"] = to_string(*r.witness, group);
      payload["syllables"] = r.witness->size();
      payload["letters"] = letter_count(*r.witness);
      payload["value"] = to_json(r.value);
      return sink.emit(make_report(command, "relation_found", digest, payload, timings), kExitRelationFound);
    }
    payload["completed_length"] = r.completed_length;
    payload["words_examined"] = r.words_examined;
    if (r.budget_exhausted_at) {
      payload["note"] = "budget exhausted at length " + std::to_string(*r.budget_exhausted_at);
      err << "budget exhausted at length " << *r.budget_exhausted_at << '\n';
    } else {
      payload["note"] = "no relation found; this is not a proof of freeness";
    }
    return sink.emit(make_report(command, "undecided", digest, payload, timings), kExitUndecided);
  } catch (const Error& e) {
    err << "error" << (e.stage().empty() ? "" : " [" + e.stage() + "]") << ": " << e.what() << '\n';
    Json payload{{"error", e.what()}, {"kind", kind_name(e.kind())}, {"stage", e.stage()}};
    return sink.emit(make_report(command, "invalid_input", digest, payload, Json{{"total_us", micros_since(t0)}}),
                     kExitInvalidInput);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    Json payload{{"error", e.what()}, {"kind", "invalid_input"}, {"stage", ""}};
    return sink.emit(make_report(command, "invalid_input", digest, payload, Json{{"total_us", micros_since(t0)}}),
                     kExitInvalidInput);
  }
}

}  // namespace pingpong
