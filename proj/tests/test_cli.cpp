#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks of the command-line binary: file formats, report
// contents, exit-code contract, and byte determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string out_file = std::string(NONSTOCH_CLI_PATH) + ".stdout.tmp";
  const std::string command =
      std::string(NONSTOCH_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  result.output = os.str();
  std::remove(out_file.c_str());
  return result;
}

std::string temp_path(const std::string& name) {
  return std::string(NONSTOCH_CLI_PATH) + "." + name;
}

void put_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

const char* kMaskedCopy = R"({
  "variables": ["X", "Z", "Y"],
  "samples": [[0, 0, 0], [0, 1, 2], [1, 0, 1], [1, 1, 2]]
})";

const char* kPentagon = R"({
  "inputs": [0, 1, 2, 3, 4],
  "outputs": [0, 1, 2, 3, 4],
  "transition": {"0": [0, 1], "1": [1, 2], "2": [2, 3], "3": [3, 4],
                 "4": [4, 0]}
})";

const char* kConfusable = R"({
  "inputs": [0, 1],
  "outputs": [0, 1],
  "transition": {"0": [0, 1], "1": [0, 1]}
})";

const char* kNoiselessBinary = R"({
  "inputs": [0, 1],
  "outputs": [0, 1],
  "transition": {"0": [0], "1": [1]}
})";

const char* kScalarPlant = R"({
  "A": [[2.0]], "G": [[1.0]], "l": 1.0, "c": 0.0
})";

}  // namespace

TEST_CASE("info reports the masked-copy measures") {
  const std::string ensemble = temp_path("masked.json");
  put_file(ensemble, kMaskedCopy);

  const auto run =
      run_cli("info " + ensemble + " --x Y --y X --all-measures");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("\"Istar\": 0.0") != std::string::npos);
  CHECK(run.output.find("\"I0_xy\": 0.584962500721") != std::string::npos);
  CHECK(run.output.find("\"T_klir\"") != std::string::npos);
  CHECK(run.output.find("\"fnv1a64\"") != std::string::npos);

  // Without the flag the extra measures stay out of the report.
  const auto narrow = run_cli("info " + ensemble + " --x Y --y X");
  CHECK(narrow.exit_code == 0);
  CHECK(narrow.output.find("I0_xy") == std::string::npos);

  // Byte determinism.
  CHECK(run_cli("info " + ensemble + " --x Y --y X --all-measures").output ==
        run.output);

  std::remove(ensemble.c_str());
}

TEST_CASE("info exit codes for user errors") {
  CHECK(run_cli("info /nonexistent.json --x X --y Y").exit_code == 2);

  const std::string bad = temp_path("bad.json");
  put_file(bad, "{nope");
  CHECK(run_cli("info " + bad + " --x X --y Y").exit_code == 2);
  put_file(bad, kMaskedCopy);
  CHECK(run_cli("info " + bad + " --x W --y Y").exit_code == 2);
  std::remove(bad.c_str());

  CHECK(run_cli("info").exit_code == 2);  // missing arguments
}

TEST_CASE("channel profiles") {
  const std::string pentagon = temp_path("pentagon.json");
  put_file(pentagon, kPentagon);

  const auto csv = run_cli("channel " + pentagon + " --tmax 2 --csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output == "tau,alpha,rate_bits\n1,2,1\n2,5,1.16096404744\n");

  const auto report = run_cli("channel " + pentagon + " --tmax 2 --witness");
  CHECK(report.exit_code == 0);
  CHECK(report.output.find("\"best_rate_bits\": 1.16096404744") !=
        std::string::npos);
  CHECK(report.output.find("\"witness\"") != std::string::npos);
  CHECK(report.output.find("\"maximin_bits\"") != std::string::npos);

  const std::string graph = temp_path("graph.txt");
  CHECK(run_cli("channel " + pentagon + " --tmax 1 --graph-export " + graph)
            .exit_code == 0);
  std::ifstream in(graph);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# vertices 5 edges 5");
  std::remove(graph.c_str());

  const std::string confusable = temp_path("confusable.json");
  put_file(confusable, kConfusable);
  const auto zero = run_cli("channel " + confusable + " --tmax 1 --csv");
  CHECK(zero.exit_code == 0);
  CHECK(zero.output == "tau,alpha,rate_bits\n1,1,0\n");
  std::remove(confusable.c_str());

  // Deep profiles run past the exact-search cap: partial results, exit 4.
  const auto deep = run_cli("channel " + pentagon + " --tmax 4 --csv");
  CHECK(deep.exit_code == 4);
  CHECK(deep.output.find("3,10,1.10730936496") != std::string::npos);
  std::remove(pentagon.c_str());
}

TEST_CASE("estimate-check verdicts") {
  const std::string plant = temp_path("plant.json");
  const std::string pentagon = temp_path("pentagon.json");
  const std::string confusable = temp_path("confusable.json");
  const std::string binary = temp_path("binary.json");
  put_file(plant, kScalarPlant);
  put_file(pentagon, kPentagon);
  put_file(confusable, kConfusable);
  put_file(binary, kNoiselessBinary);

  const auto achievable =
      run_cli("estimate-check " + plant + " " + pentagon + " --rho 1.0");
  CHECK(achievable.exit_code == 0);
  CHECK(achievable.output.find("\"verdict\": \"ACHIEVABLE\"") !=
        std::string::npos);
  CHECK(achievable.output.find("\"tau\": 2") != std::string::npos);
  CHECK(achievable.output.find("\"codebook_size\": 5") != std::string::npos);

  const auto violated =
      run_cli("estimate-check " + plant + " " + confusable + " --rho 1.0");
  CHECK(violated.exit_code == 0);
  CHECK(violated.output.find("\"verdict\": \"NECESSARY-VIOLATED\"") !=
        std::string::npos);

  const auto boundary =
      run_cli("estimate-check " + plant + " " + binary + " --rho 1.0");
  CHECK(boundary.exit_code == 0);
  CHECK(boundary.output.find("\"verdict\": \"BOUNDARY\"") != std::string::npos);

  std::remove(plant.c_str());
  std::remove(pentagon.c_str());
  std::remove(confusable.c_str());
  std::remove(binary.c_str());
}

TEST_CASE("estimate-run traces") {
  const std::string plant = temp_path("plant.json");
  const std::string pentagon = temp_path("pentagon.json");
  const std::string confusable = temp_path("confusable.json");
  put_file(plant, kScalarPlant);
  put_file(pentagon, kPentagon);
  put_file(confusable, kConfusable);

  const std::string args = "estimate-run " + plant + " " + pentagon +
                           " --rho 0.95 --x0 0.73 --T 40 --policy adversarial";
  const auto run = run_cli(args);
  CHECK(run.exit_code == 0);  // final scaled error below initial
  CHECK(run.output.find("t,state_0,estimate_0,err,scaled_err") !=
        std::string::npos);
  CHECK(run.output.find("# plant") == 0);
  CHECK(run_cli(args).output == run.output);  // deterministic

  // Zero start: the scaled error stays at zero, never strictly below.
  const auto zero = run_cli("estimate-run " + plant + " " + pentagon +
                            " --rho 0.95 --x0 0 --T 10 --policy first");
  CHECK(zero.exit_code == 1);

  // Disturbed run with bounded errors.
  const auto noisy =
      run_cli("estimate-run " + plant + " " + pentagon +
              " --rho 1.0 --x0 0.73 --T 60 --policy adversarial "
              "--noise 0.01 --noise-policy adversarial");
  CHECK(noisy.exit_code == 0);

  // Out-of-ball start and infeasible channel.
  CHECK(run_cli("estimate-run " + plant + " " + pentagon +
                " --rho 0.95 --x0 1.5 --T 10 --policy first")
            .exit_code == 2);
  CHECK(run_cli("estimate-run " + plant + " " + confusable +
                " --rho 0.95 --x0 0.5 --T 10 --policy first")
            .exit_code == 5);

  std::remove(plant.c_str());
  std::remove(pentagon.c_str());
  std::remove(confusable.c_str());
}

TEST_CASE("witness packings") {
  const auto a = run_cli("witness --eigs 2 --rho 1 --eps 0.25 --tau 4 --l 1");
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("\"count\": 5") != std::string::npos);
  CHECK(a.output.find("\"bound_bits\": 2.321928094") != std::string::npos);

  const auto b = run_cli("witness --eigs 2 --rho 1 --eps 0.05 --tau 1 --l 1");
  CHECK(b.exit_code == 0);
  CHECK(b.output.find("\"count\": 1") != std::string::npos);
  CHECK(b.output.find("\"bound_bits\": 0.0") != std::string::npos);

  const auto c = run_cli("witness --eigs 2,3 --rho 1 --eps 0.1 --tau 2 --l 1");
  CHECK(c.exit_code == 0);
  CHECK(c.output.find("\"count\": 21") != std::string::npos);

  CHECK(run_cli("witness --eigs 2 --rho 1 --eps 0.9 --tau 1 --l 1").exit_code ==
        2);
}
