#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = radconc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("radius of convexity for Co(2)") {
  const Run r = run({"radius", "--class", "coa", "--A", "2", "--mode", "convexity", "--n", "1", "--alpha", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.267949192431") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("radius csv has one header and one row with 15 significant digits") {
  const Run r = run({"radius", "--class", "coa", "--A", "2", "--mode", "convexity", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  const auto header = split(rows[0], ',');
  const auto cells = split(rows[1], ',');
  REQUIRE(header.size() == cells.size());
  CHECK(header[8] == "radius");
  CHECK(cells[8] == "0.267949192431197");
  CHECK(cells[15] == "1;-4;1");
}

TEST_CASE("radius json embeds the full result") {
  const Run r = run({"radius", "--class", "sp", "--p", "0.5", "--mode", "concavity", "--alpha", "0.3,1.2",
                     "--n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["query"]["alphas"].size() == 2);
  CHECK(j["result"]["polynomial"].size() == 7);
  CHECK(j["result"]["status"] == "found");
  CHECK(j["result"]["bracket"][1] == 0.5);
  CHECK(j["result"]["crosscheck_disagrees"] == false);
  const double radius = j["result"]["radius"];
  CHECK(radius > 0.0);
  CHECK(radius < 0.5);
}

TEST_CASE("univalence uses the class default scale unless rho is given") {
  const Run d = run({"radius", "--class", "coa", "--A", "2", "--mode", "univalence", "--format", "json"});
  REQUIRE(d.code == 0);
  const auto j = nlohmann::json::parse(d.out);
  CHECK(j["query"]["rho"].get<double>() == doctest::Approx(std::sin(3.141592653589793 / 8)));
  CHECK(j["result"]["source"] == "closed-form");
  const Run e = run({"radius", "--class", "coa", "--A", "2", "--mode", "univalence", "--rho", "0.25", "--alpha", "1", "--format", "csv"});
  const auto cells = split(lines(e.out)[1], ',');
  CHECK(cells[7] == "0.25");
  CHECK(std::stod(cells[8]) == doctest::Approx(0.25 * (1 / std::cos(0.5) - std::tan(0.5))).epsilon(1e-12));
}

TEST_CASE("as-stated variant surfaces the printed formulas") {
  const Run proof = run({"radius", "--class", "coa", "--A", "1.5", "--mode", "concavity", "--format", "csv"});
  const Run stated = run({"radius", "--class", "coa", "--A", "1.5", "--mode", "concavity", "--variant", "as-stated", "--format", "csv"});
  const auto a = split(lines(proof.out)[1], ',');
  const auto b = split(lines(stated.out)[1], ',');
  CHECK(a[2] == "as-proof");
  CHECK(b[2] == "as-stated");
  CHECK(a[15] != b[15]);
  CHECK(b[15].substr(b[15].rfind(';') + 1) == "-7");  // (A - 5)/(A - 1) at A = 3/2
}

TEST_CASE("sweep over alpha1 gives 25 strictly decreasing radii") {
  const Run r = run({"sweep", "--class", "s", "--mode", "concavity", "--A", "2", "--n", "1", "--axis", "alpha1",
                     "--range", "0:3.0:25", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 26);
  CHECK(rows[0] == "axis,value,radius,status,crosscheck,crosscheck_disagrees");
  double previous = 2.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i], ',');
    const double radius = std::stod(cells[2]);
    CHECK(radius < previous);
    previous = radius;
  }
  CHECK(split(rows[1], ',')[1] == "0");
  CHECK(split(rows[25], ',')[1] == "3");
}

TEST_CASE("sweeps over p and A") {
  const Run p = run({"sweep", "--class", "sp", "--mode", "convexity", "--p", "0.5", "--axis", "p", "--range", "0.2:0.8:4"});
  CHECK(p.code == 0);
  CHECK(lines(p.out).size() == 5);
  const Run A = run({"sweep", "--class", "coa", "--mode", "convexity", "--A", "2", "--axis", "A", "--range", "1.1:2:10", "--format", "json"});
  REQUIRE(A.code == 0);
  const auto j = nlohmann::json::parse(A.out);
  CHECK(j["points"].size() == 10);
  const double last = j["points"][9]["result"]["radius"];
  CHECK(last == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"radius", "--mode", "convexity"}).code == 2);
  CHECK(run({"radius", "--class", "q", "--mode", "convexity"}).code == 2);
  CHECK(run({"radius", "--class", "coa", "--mode", "convexity"}).code == 2);  // no A
  CHECK(run({"radius", "--class", "s", "--A", "2", "--mode", "convexity"}).code == 2);  // unsupported
  const Run pi = run({"radius", "--class", "coa", "--A", "2", "--mode", "convexity", "--alpha", "3.15"});
  CHECK(pi.code == 2);
  CHECK(pi.err.find("pi") != std::string::npos);
  CHECK(run({"radius", "--class", "coa", "--A", "2", "--mode", "convexity", "--format", "xml"}).code == 2);
  CHECK(run({"radius", "--class", "coa", "--A", "2", "--mode", "convexity", "--tol", "0.1"}).code == 2);
  CHECK(run({"radius", "--class", "coa", "--A", "2", "--mode", "convexity", "--n", "abc"}).code == 2);
  CHECK(run({"sweep", "--class", "s", "--A", "2", "--mode", "concavity", "--axis", "alpha1", "--range", "0:1:1"}).code == 2);
  CHECK(run({"sweep", "--class", "s", "--A", "2", "--mode", "concavity", "--axis", "alpha2", "--range", "0:1:3"}).code == 2);
  CHECK(run({"sweep", "--class", "s", "--A", "2", "--mode", "concavity", "--axis", "p", "--range", "0:1:3"}).code == 2);
  CHECK(run({"sweep", "--class", "s", "--A", "2", "--mode", "concavity", "--axis", "alpha1", "--range", "0:x:3"}).code == 2);
  CHECK(run({"sweep", "--class", "s", "--A", "2", "--mode", "concavity", "--axis", "alpha1", "--range", "0:3.5:3"}).code == 2);
  CHECK(run({"lemma", "--check", "nothing"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
}

TEST_CASE("help lists the csv columns") {
  const Run r = run({"radius", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("CSV columns: class,mode,variant") != std::string::npos);
  CHECK(run({"sweep", "--help"}).out.find("axis,value,radius") != std::string::npos);
  CHECK(run({"verify", "--help"}).out.find("min_re") != std::string::npos);
  CHECK(run({"lemma", "--help"}).out.find("check,trials,violations") != std::string::npos);
}

TEST_CASE("verify exit status follows the verdict") {
  const Run ok = run({"verify", "--class", "coa", "--A", "2", "--mode", "convexity"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASSED") != std::string::npos);
  const Run bad = run({"verify", "--class", "sp", "--p", "0.7", "--mode", "convexity", "--variant", "as-stated", "--format", "csv"});
  CHECK(bad.code == 1);
  const auto cells = split(lines(bad.out)[1], ',');
  CHECK(cells[14] == "0");
  const Run many = run({"verify", "--class", "coa", "--A", "2", "--mode", "concavity", "--random", "5", "--seed", "3",
                        "--radii", "16", "--angles", "64", "--format", "json"});
  CHECK(many.code == 0);
  CHECK(nlohmann::json::parse(many.out).size() == 5);
}

TEST_CASE("lemma certification") {
  const Run r = run({"lemma", "--trials", "20000", "--seed", "7"});
  CHECK(r.code == 0);
  for (const char* name : {"sec-band", "rotated-product-bound", "gk-peak", "disk-containment"}) {
    CAPTURE(name);
    const auto at = r.out.find(name);
    REQUIRE(at != std::string::npos);
    const auto line = r.out.substr(at, r.out.find('\n', at) - at);
    CHECK(line.find("violations: 0 ") != std::string::npos);
  }
  const Run one = run({"lemma", "--trials", "1000", "--check", "gk-peak", "--format", "csv"});
  CHECK(lines(one.out).size() == 2);
}

TEST_CASE("identical arguments produce identical output") {
  const std::vector<std::vector<std::string>> commands = {
      {"radius", "--class", "sp", "--p", "0.3", "--mode", "concavity", "--n", "2", "--alpha", "0.1,2", "--format", "json"},
      {"sweep", "--class", "coa", "--A", "1.5", "--mode", "concavity", "--n", "2", "--alpha", "0,1", "--axis", "alpha2", "--range", "0:3:11"},
      {"verify", "--class", "s", "--A", "2", "--mode", "concavity", "--n", "2", "--alpha", "0.5,0.5", "--format", "csv"},
      {"lemma", "--trials", "5000", "--seed", "11", "--format", "json"}};
  for (const auto& c : commands) {
    const Run a = run(c);
    const Run b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
