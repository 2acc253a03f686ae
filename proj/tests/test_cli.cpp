#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EPIUPDATE_BIN) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("update") {
  auto r = run("update Sq --with IS --with IS");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("36 worlds", 0) == 0);
  r = run("update M --with-action skip");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("2 worlds", 0) == 0);
  r = run("update Sq --history --with IS");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("12 worlds", 0) == 0);
  CHECK(contains(r.out, "11.Rab: p_a p_b a_a ab_b"));
  r = run("update Sq --with-induced IS --format json");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"worlds\""));
  r = run("update Nope --with IS");
  CHECK(r.status == 2);
}

TEST_CASE("check") {
  auto r = run("check \"Sq odot IS odot IS\" 11.U.Rba \"hK a hK b ~p_a\"");
  CHECK(r.status == 1);
  CHECK(r.out == "false\n");
  r = run("check \"Sq odot IS otimes U(IS)\" \"11.U.(Rba,11)\" \"hK a hK b ~p_a\"");
  CHECK(r.status == 0);
  CHECK(r.out == "true\n");
  r = run("check Sq \"(D{a,b} p_a <-> p_a)\" --valid");
  CHECK(r.status == 0);
  r = run("check Sq 11 \"(p_a &\"");
  CHECK(r.status == 2);
  CHECK(contains(r.out, "error:"));
  r = run("check Sq 99 p_a");
  CHECK(r.status == 2);
}

TEST_CASE("bisim") {
  auto r = run("bisim \"M odot Byz\" \"M otimes U(Byz)\" --iso");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "isomorphic"));
  r = run("bisim \"Sq odot IS odot IS\" \"Sq odot IS otimes U(IS)\"");
  CHECK(r.status == 1);
  CHECK(contains(r.out, "not bisimilar"));
  r = run("bisim Sq Sq");
  CHECK(r.status == 0);
}

TEST_CASE("search, induce, dot, iunf") {
  auto r = run("search --bases Sq --target ann");
  CHECK(r.status == 1);
  CHECK(contains(r.out, "no equivalent found within search space"));
  r = run("search --bases M --target skip");
  CHECK(r.status == 0);
  r = run("induce Byz --atoms p_a");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "(Rab,1)"));
  const auto d1 = run("dot \"Sq odot IS\"");
  const auto d2 = run("dot \"Sq odot IS\"");
  CHECK(d1.status == 0);
  CHECK(d1.out == d2.out);
  CHECK(d1.out.rfind("graph", 0) == 0);
  r = run("iunf \"[IS:{a->b,b->a}] K b p_a\"");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "D{a,b}"));
}
