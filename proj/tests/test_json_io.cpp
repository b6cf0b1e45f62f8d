#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nonstoch/errors.hpp>
#include <nonstoch/info.hpp>
#include <nonstoch/json_io.hpp>

#include <random>

#include "fixtures.hpp"
#include "properties.hpp"

using namespace nonstoch;

TEST_CASE("ensemble files round-trip bit-exactly") {
  const std::string text = R"({
    "variables": ["X", "Y"],
    "samples": [[0, "1/2"], [1, "sym"], [[1, 2], -3]]
  })";
  const Ensemble e = ensemble_from_json(text);
  CHECK(e.sample_count() == 3);
  CHECK(e.at(0, 1) == Value(Rational(1, 2)));
  CHECK(e.at(1, 1) == Value("sym"));
  CHECK(e.at(2, 0) == Value(Value::Tuple{Value(1), Value(2)}));
  CHECK(ensemble_from_json(ensemble_to_json(e)) == e);
}

TEST_CASE("random ensembles survive the round trip") {
  properties::Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    const Ensemble e = properties::random_ensemble(rng, true);
    CHECK(ensemble_from_json(ensemble_to_json(e)) == e);
  }
}

TEST_CASE("ensemble parse errors") {
  CHECK_THROWS_AS(ensemble_from_json("not json"), InvalidArgument);
  CHECK_THROWS_AS(ensemble_from_json("{}"), InvalidArgument);
  CHECK_THROWS_AS(
      ensemble_from_json(R"({"variables": ["X"], "samples": [[0.5]]})"),
      InvalidArgument);
  CHECK_THROWS_AS(
      ensemble_from_json(R"({"variables": ["X"], "samples": []})"),
      InvalidArgument);
}

TEST_CASE("a symbol that looks rational is rejected on save") {
  const Ensemble e({"X"}, {{Value("3/4")}});
  CHECK_THROWS_AS(ensemble_to_json(e), InvalidArgument);
}

TEST_CASE("family files") {
  const std::string discrete = R"({
    "ground": "discrete",
    "members": [{"label": 0, "set": [0, 2]}, {"label": 1, "set": [1, 2]}]
  })";
  const RangeFamily family = family_from_json(discrete);
  REQUIRE(family.members.size() == 2);
  CHECK(overlap_partition(family).blocks.size() == 1);
  CHECK(family_from_json(family_to_json(family)).members.size() == 2);

  const std::string intervals = R"({
    "ground": "interval",
    "members": [{"label": "a", "set": [[0, 1]]},
                {"label": "b", "set": [["1/2", "3/2"]]},
                {"label": "c", "set": [[2, 3]]}]
  })";
  const RangeFamily iv = family_from_json(intervals);
  CHECK(overlap_partition(iv).blocks.size() == 2);
  const RangeFamily round = family_from_json(family_to_json(iv));
  CHECK(std::get<IntervalUnion>(round.members[1].set) ==
        std::get<IntervalUnion>(iv.members[1].set));

  CHECK_THROWS_AS(family_from_json(R"({"ground": "weird", "members": []})"),
                  InvalidArgument);
}

TEST_CASE("channel files") {
  const std::string text = R"({
    "inputs": [0, 1],
    "outputs": [0, 1, "e"],
    "transition": {"0": [0, "e"], "1": [1, "e"]}
  })";
  const Channel c = channel_from_json(text);
  CHECK(c.transition(Value(0)) == ValueSet{Value(0), Value("e")});
  const Channel round = channel_from_json(channel_to_json(c));
  CHECK(round.transition_map() == c.transition_map());

  CHECK_THROWS_AS(channel_from_json(R"({"inputs": [0], "outputs": [0]})"),
                  InvalidArgument);
  // Validation failures surface as user errors too.
  CHECK_THROWS_AS(channel_from_json(R"({
    "inputs": [0], "outputs": [0, 1], "transition": {"0": [0]}
  })"),
                  InvalidArgument);
}

TEST_CASE("plant files") {
  const std::string text = R"({
    "A": [[2.0]], "G": [[1.0]], "l": 1.0, "c": 0.01
  })";
  const PlantModel plant = plant_from_json(text);
  CHECK(plant.dimension() == 1);
  CHECK(plant.eigenvalues[0] == std::complex<double>(2.0, 0.0));
  CHECK(plant.disturbance_bound == 0.01);

  const std::string with_blocks = R"({
    "A": [[1.0, -1.2], [1.2, 1.0]], "G": [[1, 0], [0, 1]],
    "l": 1.0, "jordan_blocks": [2]
  })";
  CHECK(plant_from_json(with_blocks).jordan_blocks == std::vector<int>{2});

  const std::string with_eigs = R"({
    "A": [[2.0]], "G": [[1.0]], "eigenvalues": [2.0], "l": 1.0
  })";
  CHECK(plant_from_json(with_eigs).eigenvalues[0].real() == 2.0);

  CHECK_THROWS_AS(plant_from_json(R"({"A": [[2.0]], "l": 1.0})"),
                  InvalidArgument);
  CHECK_THROWS_AS(plant_from_json(R"({
    "A": [[2.0]], "G": [[1.0]], "eigenvalues": [3.0], "l": 1.0
  })"),
                  InvalidArgument);
}

TEST_CASE("partition and profile serialization") {
  const auto family = RangeFamily::from(
      conditional_family(fixtures::masked_copy(), "Y", {"X"}));
  const std::string json = partition_to_json(overlap_partition(family));
  CHECK(json.find("\"blocks\"") != std::string::npos);
  CHECK(json.find("\"provenance\"") != std::string::npos);
  CHECK(json.find("\"bits\"") != std::string::npos);

  const auto profile = c0_lower_profile(fixtures::pentagon(), 2);
  const std::string csv = profile_to_csv(profile);
  CHECK(csv == "tau,alpha,rate_bits\n1,2,1\n2,5,1.16096404744\n");
  const std::string pj = profile_to_json(profile);
  CHECK(pj.find("\"best_rate_bits\"") != std::string::npos);
}

TEST_CASE("graph adjacency export") {
  const Graph g = confusability_graph(fixtures::pentagon());
  const std::string text = graph_to_adjacency_text(g);
  CHECK(text.find("# vertices 5 edges 5") == 0);
  CHECK(text.find("0: 1 4") != std::string::npos);
}

TEST_CASE("trace CSV shape") {
  Trace trace;
  trace.tau = 1;
  TraceRow row;
  row.t = 0;
  row.state = Eigen::VectorXd::Constant(1, 0.5);
  row.estimate = Eigen::VectorXd::Zero(1);
  row.error = 0.5;
  row.scaled_error = 0.5;
  trace.rows.push_back(row);
  const std::string csv = trace_to_csv(trace);
  CHECK(csv.find("t,state_0,estimate_0,err,scaled_err\n") == 0);
  CHECK(csv.find("0,0.5,0,0.5,0.5\n") != std::string::npos);
}

TEST_CASE("fnv1a64 is stable") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 12638187200555641996ULL);
}
