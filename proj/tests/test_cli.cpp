#include <doctest.h>

#include "taut/cli.hpp"

using namespace taut;
using taut::cli::run;

namespace {

cli::Result sh(std::vector<std::string> args) { return run(args); }

}  // namespace

TEST_CASE("spec examples") {
  auto r = sh({"vanish", "--g", "7", "--i", "2", "--l", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "vanishes: true\n");
  r = sh({"simplify", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  r = sh({"simplify", "--n", "2", "D(1,2)^2"});
  CHECK(r.out == "-D(1,2)*psi(1)\n");
  r = sh({"fp", "1", "--format", "latex"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("\\Delta_{12} \\psi_{1}", 0) == 0);
}

TEST_CASE("class commands") {
  CHECK(sh({"restrict", "@fp1"}).out == "D(1,2)*K(1) - 1/(2*g-2)*K(1)*K(2)\n");
  CHECK(sh({"--g", "2", "restrict", "@fp1"}).out == "D(1,2)*K(1) - 1/2*K(1)*K(2)\n");
  CHECK(sh({"deg", "@fp1"}).out == "0\n");
  CHECK(sh({"zk"}).out == sh({"simplify", "--flavor", "pointed", "K(1)*K(2) - (2*g-2)*D(1,2)*K(1)"}).out);
  CHECK(sh({"fpnm", "3", "0"}).out == sh({"gs"}).out);
  const auto a = sh({"act", "@pi:1,1", "@fp1"});
  CHECK(a.code == 0);
  CHECK(a.out == sh({"fp", "1"}).out);
  CHECK(sh({"simplify", "--n", "1", "-(g-4)^2"}).out == "-(g^2-8*g+16)\n");
}

TEST_CASE("weights commands") {
  auto r = sh({"bbw", "-5,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("degree: 3") != std::string::npos);
  CHECK(sh({"dim", "1,1"}).out == "5\n");
  CHECK(sh({"tensor", "1,0"}).out == "2,0\n1,1\n0,0\n");
  CHECK(sh({"kostant", "0,0", "--i", "1"}).out == "H^1: (0,-2)\n");
  CHECK(sh({"first-nonvanish", "--g", "7", "--l", "3"}).out == "first nonvanishing degree: 3\n");
  r = sh({"leray", "--g", "7", "--cycle", "@fp2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("* H^4(M_g, R^2) alpha=(1,1)") != std::string::npos);
}

TEST_CASE("symprod commands") {
  auto r = sh({"symprod", "verify", "--n", "5", "--alphabet", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("holds: true", 0) == 0);
  r = sh({"symprod", "verify", "--n", "3", "--alphabet", "3", "--convention", "distinct"});
  CHECK(r.out.rfind("holds: false", 0) == 0);
  r = sh({"symprod", "decompose", "{x,y} - {x,o} - {y,o} + {o,o}"});
  CHECK(r.out.find("level: 2") != std::string::npos);
}

TEST_CASE("brauer commands") {
  auto r = sh({"brauer", "compose", "[(1,2),(1',2')]", "[(1,2),(1',2')]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("loops: 1") != std::string::npos);
  r = sh({"brauer", "search", "--source", "@gs;@gs", "--target-class", "@fp1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("enumerated: 105") != std::string::npos);
  CHECK(r.out.find("target in span: true") != std::string::npos);
}

TEST_CASE("exit codes and clean error streams") {
  auto r = sh({"simplify", "--n", "2", "psi(3)"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.out.empty());
  CHECK(r.err.find("out of range") != std::string::npos);
  r = sh({"simplify", "--n", "2", "psi(1"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.out.empty());
  r = sh({"decompose-power", "--n", "3", "--g", "2"});
  CHECK(r.code == cli::kRefusal);
  CHECK(r.out.empty());
  r = sh({"simplify", "--n", "1", "psi(1)/(g-g)"});
  CHECK(r.code != 0);
  CHECK(r.out.empty());
  CHECK(sh({}).code == cli::kUsage);
  CHECK(sh({"--format", "xml", "gs"}).code == cli::kUsage);
  CHECK(sh({"nosuch"}).code == cli::kUsage);
}

TEST_CASE("determinism") {
  const std::vector<std::vector<std::string>> cmds{
      {"fp", "2"}, {"gs", "--format", "json"}, {"lewis-estimate", "@fp2"}, {"kostant", "1,0,0", "--i", "2"}};
  for (const auto& c : cmds) CHECK(sh(c).out == sh(c).out);
}

TEST_CASE("helpers") {
  CHECK(cli::inferFactorCount("D(1,3)*psi(2)") == 3);
  CHECK(cli::inferFactorCount("g+1") == 0);
  CHECK(cli::resolveClass("@fp1", -1, Flavor::Relative) == fp(1));
  CHECK(cli::resolveClass("@fp1", -1, Flavor::Pointed) == restrictToFiber(fp(1)));
  CHECK(cli::resolveClass("@Y", -1, Flavor::Pointed) == grossSchoenY());
}
