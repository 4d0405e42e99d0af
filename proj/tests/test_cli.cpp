#include "saddlepep/json_io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SADDLEPEP_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("certify command") {
  SUBCASE("certifies the classical Sim-GDA rate and exits 0") {
    const std::string out = temp_path("certify.json");
    const RunResult r = run_cli(
        "certify --method sim --set def --kappa 10 --eta 0.1 --out " + out);
    CHECK(r.exit_code == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    pep::Json j;
    in >> j;
    CHECK(j.at("rho").get<double>() ==
          doctest::Approx(0.99499).epsilon(2e-3));
    CHECK(j.at("certified").get<bool>());
    std::remove(out.c_str());
  }
  SUBCASE("invalid flag value exits 64") {
    const RunResult r =
        run_cli("certify --method sim --set def --kappa 10 --eta -1");
    CHECK(r.exit_code == 64);
  }
  SUBCASE("divergent step exits 2") {
    const RunResult r = run_cli(
        "certify --method alt --set full --kappa 10 --eta 10 --out " +
        temp_path("divergent.json"));
    CHECK(r.exit_code == 2);
    std::remove(temp_path("divergent.json").c_str());
  }
}

TEST_CASE("sweep command emits CSV in grid order") {
  const std::string out = temp_path("sweep.csv");
  const std::string svg = temp_path("sweep.svg");
  const RunResult r = run_cli(
      "sweep --method sim --set def,full --kappa 2 --eta-min 0.2 --eta-max 1.0 "
      "--eta-steps 3 --bisect-tol 1e-3 --out " + out + " --svg " + svg);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "method,set,kappa,eta,rho");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);  // two sets, three grid points each
  std::ifstream svg_in(svg);
  REQUIRE(svg_in.good());
  std::string svg_text((std::istreambuf_iterator<char>(svg_in)),
                       std::istreambuf_iterator<char>());
  CHECK(svg_text.find("<svg") != std::string::npos);
  CHECK(svg_text.find("polyline") != std::string::npos);
  std::remove(out.c_str());
  std::remove(svg.c_str());
}

TEST_CASE("sweep output is byte-identical across runs") {
  const std::string a = temp_path("sweep_a.csv");
  const std::string b = temp_path("sweep_b.csv");
  const std::string flags =
      "sweep --method sim --set def --kappa 10 --eta-min 0.05 --eta-max 0.5 "
      "--eta-steps 4 --bisect-tol 1e-3 --out ";
  CHECK(run_cli(flags + a).exit_code == 0);
  CHECK(run_cli(flags + b).exit_code == 0);
  std::ifstream fa(a), fb(b);
  const std::string ta((std::istreambuf_iterator<char>(fa)),
                       std::istreambuf_iterator<char>());
  const std::string tb((std::istreambuf_iterator<char>(fb)),
                       std::istreambuf_iterator<char>());
  CHECK(ta == tb);
  CHECK(!ta.empty());
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("interp-check command") {
  const std::string input = temp_path("points.json");
  SUBCASE("quadratic samples pass, exit 0") {
    std::ofstream(input) << R"({"d_x": 1, "d_y": 1, "samples": [
      {"x": [0], "y": [0], "gx": [0], "gy": [0], "f": 0},
      {"x": [1], "y": [1], "gx": [1], "gy": [-1], "f": 0}]})";
    const RunResult r =
        run_cli("interp-check --class quad --mu 1 --input " + input);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"ok\": true") != std::string::npos);
  }
  SUBCASE("malformed JSON exits 65") {
    std::ofstream(input) << "{not json";
    const RunResult r =
        run_cli("interp-check --class quad --mu 1 --input " + input);
    CHECK(r.exit_code == 65);
  }
  SUBCASE("missing input flag exits 64") {
    const RunResult r = run_cli("interp-check --class smu --mu 1");
    CHECK(r.exit_code == 64);
  }
  std::remove(input.c_str());
}

TEST_CASE("config file mirrors flags and flags win") {
  const std::string cfg = temp_path("config.json");
  std::ofstream(cfg) << R"({"method": "sim", "set": "def", "kappa": 10,
                            "eta": 0.1, "bisect-tol": 0.001})";
  const std::string out = temp_path("cfg_out.json");
  const RunResult r =
      run_cli("certify --config " + cfg + " --eta 0.05 --out " + out);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  pep::Json j;
  in >> j;
  CHECK(j.at("eta").get<double>() == doctest::Approx(0.05));  // flag wins
  CHECK(j.at("kappa").get<double>() == doctest::Approx(10.0));
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST_CASE("kernels command dumps the printed matrices") {
  const RunResult r = run_cli("kernels --set full --mu-over-l 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"kernels\"") != std::string::npos);
}
