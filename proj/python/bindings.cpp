#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bayespoker/harness.hpp"
#include "bayespoker/reference.hpp"

namespace py = pybind11;
using namespace bayespoker;

namespace {

std::string type_name(HandType17 t) { return std::string(to_string(t)); }

HandType17 type_from_name(const std::string& name) {
  const auto t = parse_hand_type(name);
  if (!t) throw py::value_error("unknown hand type: " + name);
  return *t;
}

py::dict belief_dict(const BeliefState& b) {
  py::dict d;
  d["p_win"] = b.p_win;
  d["bpp_final"] = std::vector<double>(b.bpp_final.begin(), b.bpp_final.end());
  d["opp_final"] = std::vector<double>(b.opp_final.begin(), b.opp_final.end());
  d["opp_current"] = std::vector<double>(b.opp_current.begin(), b.opp_current.end());
  return d;
}

py::dict stats_dict(const MatchStats& s) {
  py::dict d;
  d["n"] = s.n;
  d["mean"] = s.mean;
  d["sd"] = s.sd;
  d["t"] = s.t;
  d["p"] = s.p;
  d["nets"] = s.nets;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bayespoker, m) {
  m.doc() = "Bayesian five-card stud player: evaluation, inference, decisions and match simulation";

  py::register_exception<CardError>(m, "CardError", PyExc_ValueError);
  py::register_exception<MatrixError>(m, "MatrixError", PyExc_ValueError);
  py::register_exception<InferenceError>(m, "InferenceError", PyExc_ValueError);
  py::register_exception<DecisionError>(m, "DecisionError", PyExc_ValueError);

  m.def("hand_types", [] {
    std::vector<std::string> out;
    for (auto n : hand_type_names()) out.emplace_back(n);
    return out;
  });
  m.def("classify", [](const std::string& cards) { return type_name(classify_cards(parse_cards(cards))); }, py::arg("cards"),
        "Hand type of 1 to 5 cards, e.g. \"Ah Kd 9c\".");
  m.def(
      "compare",
      [](const std::string& a, const std::string& b) {
        switch (compare_hands(parse_cards(a), parse_cards(b))) {
          case Comparison::AWins: return 1;
          case Comparison::BWins: return -1;
          case Comparison::Tie: return 0;
        }
        return 0;
      },
      py::arg("a"), py::arg("b"), "1 if five-card hand a wins, -1 if b wins, 0 on a tie.");

  m.def("threshold", [](double pot, double cost) { return threshold({pot, cost, false, 0}); }, py::arg("pot"),
        py::arg("cost_to_showdown"));
  m.def(
      "curve_weights",
      [](double d, double f_b, double f_f, double f_c) {
        const CurveWeights w = curve_weights(d, {f_b, f_f, f_c});
        return py::make_tuple(w.bet_raise, w.fold, w.call);
      },
      py::arg("d"), py::arg("f_b") = 0.10, py::arg("f_f") = 0.05, py::arg("f_c") = 0.05,
      "(bet_raise, fold, call) weights at d = p_win - threshold.");
  m.def(
      "action_distribution",
      [](double p_win, double pot, double cost, bool facing_bet, int raises, double f_b, double f_f, double f_c) {
        const auto dist = action_distribution(p_win, {pot, cost, facing_bet, raises}, {f_b, f_f, f_c});
        py::dict d;
        for (int a = 0; a < kNumActions; ++a) d[py::str(std::string(to_string(static_cast<Action>(a))))] = dist[a];
        return d;
      },
      py::arg("p_win"), py::arg("pot"), py::arg("cost_to_showdown"), py::arg("facing_bet") = false, py::arg("raises") = 0,
      py::arg("f_b") = 0.10, py::arg("f_f") = 0.05, py::arg("f_c") = 0.05);

  py::class_<MatrixSet>(m, "Matrices")
      .def_static("estimate", [](std::uint64_t deals, std::uint64_t seed) { return build_matrix_set(deals, seed); },
                  py::arg("deals"), py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>())
      .def_static("load", [](const std::string& path) { return load_matrices(path); }, py::arg("path"))
      .def("save", [](const MatrixSet& s, const std::string& path) { save_matrices(path, s); }, py::arg("path"))
      .def_readonly("seed", &MatrixSet::seed)
      .def_readonly("num_deals", &MatrixSet::num_deals)
      .def_property_readonly("final_prior",
                             [](const MatrixSet& s) { return std::vector<double>(s.deal.final_prior.begin(), s.deal.final_prior.end()); })
      .def_property_readonly("category_marginal", [](const MatrixSet& s) {
        const auto c = collapse_to_categories(s.deal.final_prior);
        return std::vector<double>(c.begin(), c.end());
      });

  m.attr("category_reference") =
      std::vector<double>(kCategoryReferenceProbabilities.begin(), kCategoryReferenceProbabilities.end());

  m.def(
      "infer",
      [](const MatrixSet& set, int round, const std::string& bpp_current, const std::string& opp_upcards,
         std::optional<std::string> opp_action, std::optional<std::vector<std::vector<double>>> action_matrix) {
        ActionMatrix am;
        if (action_matrix) {
          if (action_matrix->size() != kNumHandTypes) throw py::value_error("action_matrix needs 17 rows");
          for (int t = 0; t < kNumHandTypes; ++t) {
            if ((*action_matrix)[t].size() != 2) throw py::value_error("action_matrix rows need 2 entries");
            am[t] = {(*action_matrix)[t][0], (*action_matrix)[t][1]};
          }
        } else {
          for (auto& row : am) row = {0.5, 0.5};
        }
        std::optional<ActionClass> cls;
        if (opp_action) {
          const auto a = parse_action(*opp_action);
          if (!a) throw py::value_error("unknown action: " + *opp_action);
          cls = class_of(*a);
          if (!cls) throw py::value_error("FOLD carries no evidence");
        }
        const NetworkRound net{RoundId(round), &set.deal, &set.win, am};
        return belief_dict(infer(net, {type_from_name(bpp_current), type_from_name(opp_upcards), cls}));
      },
      py::arg("matrices"), py::arg("round"), py::arg("bpp_current"), py::arg("opp_upcards"), py::arg("opp_action") = py::none(),
      py::arg("action_matrix") = py::none());

  m.def(
      "win_probability",
      [](const std::string& own, const std::string& opp_up, std::uint64_t samples, std::uint64_t seed) {
        const auto cards = parse_cards(own);
        if (cards.size() < 2) throw py::value_error("own hand needs the hole card and at least one upcard");
        PlayerView v;
        v.own_hole = cards[0];
        v.own_up.assign(cards.begin() + 1, cards.end());
        v.opp_up = parse_cards(opp_up);
        v.round = static_cast<int>(v.own_up.size());
        Rng rng(seed);
        return estimate_win_probability(v, samples, rng);
      },
      py::arg("own"), py::arg("opp_up"), py::arg("samples") = ProbabilisticAgent::kDefaultSamples, py::arg("seed") = 0,
      "Monte Carlo win probability; own lists the hole card first.");

  m.def(
      "simulate",
      [](const MatrixSet& set, const std::string& opponent, std::uint64_t games, std::uint64_t seed,
         std::optional<std::string> curves_path, bool learning) {
        const CurveParams params = curves_path ? load_curves(*curves_path) : CurveParams{};
        auto knowledge = std::make_shared<const Knowledge>(Knowledge{set.deal, set.win});
        auto counts = std::make_shared<ActionCountsStore>(set.action_counts);
        BppAgent bpp("bpp", knowledge, counts, params, BppAgent::Options{.learning = learning});
        const OpponentKind kind = parse_opponent_kind(opponent);
        auto opp = make_opponent(kind, std::string(to_string(kind)), params);
        MatchResult result;
        {
          py::gil_scoped_release release;
          result = run_match(bpp, *opp, {.games = games, .seed = seed, .keep_records = false});
        }
        return stats_dict(result.stats);
      },
      py::arg("matrices"), py::arg("opponent") = "rules", py::arg("games") = 100, py::arg("seed") = 0,
      py::arg("curves") = py::none(), py::arg("learning") = true,
      "Plays BPP against an automated opponent; returns summary statistics and per-game nets.");
}
