// Runs the mixmono executable and checks its output and exit codes.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MIXMONO_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("mixmono_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  fs::path path() const { return path_; }

 private:
  fs::path path_;
};

std::string config(const std::string& f, const std::string& domain, const std::string& extra = "") {
  return "[system]\ndim = 1\nf1 = \"" + f + "\"\n[domain]\nx1 = " + domain + "\n" + extra;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> csv_numbers(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

TEST_CASE("decompose prints the case table and g") {
  TempDir dir;
  const auto ex2 = dir.write("ex2.ini", config("x1^2", "[-1, 1]"));
  const Run r = run("decompose " + ex2);
  CHECK(r.code == 0);
  CHECK(r.out == "i j a b case z alpha beta\n1 1 -2 2 case2 x 2 0\ng1 = x1^2 + 2*x1 - 2*y1\n");

  const Run r1 = run("decompose " + dir.write("ex1.ini", config("-x1", "[0, 1]")));
  CHECK(r1.code == 0);
  CHECK(r1.out.find("1 1 -1 -1 case4 y 0 0\n") != std::string::npos);
  CHECK(r1.out.find("g1 = -y1\n") != std::string::npos);

  const Run csv = run("decompose " + ex2 + " --format csv");
  CHECK(csv.out == "i,j,a,b,case,z,alpha,beta,g\n1,1,-2,2,case2,x,2,0,\"x1^2 + 2*x1 - 2*y1\"\n");
}

TEST_CASE("bound prints decomposition bounds") {
  TempDir dir;
  const auto ex2 = dir.write("ex2.ini", config("x1^2", "[-1, 1]"));
  CHECK(run("bound " + ex2).out == "f1 ∈ [-3, 5]\n");
  CHECK(run("bound " + dir.write("ex1.ini", config("-x1", "[0, 1]"))).out == "f1 ∈ [-1, 0]\n");

  // depth 1 recovers [0, 1] up to the derivative slack
  const Run d1 = run("bound " + ex2 + " --depth 1 --format csv");
  CHECK(d1.code == 0);
  const auto rows = lines(d1.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "component,lower,upper");
  const auto cells = csv_numbers(rows[1].substr(3));
  CHECK(std::fabs(cells[0]) <= 1e-9);
  CHECK(std::fabs(cells[1] - 1) <= 1e-9);

  // depth from the config file, overridden on the command line
  const auto deep = dir.write("deep.ini", config("x1^2", "[-1, 1]", "[options]\ndepth = 1\n"));
  CHECK(run("bound " + deep).out != "f1 ∈ [-3, 5]\n");
  CHECK(run("bound " + deep + " --depth 0").out == "f1 ∈ [-3, 5]\n");

  const Run checked = run("bound " + ex2 + " --check");
  CHECK(checked.out.find("grid [") != std::string::npos);
  CHECK(checked.out.find(" contained") != std::string::npos);
  CHECK(checked.out.find("NOT") == std::string::npos);
}

TEST_CASE("reach writes the tube as CSV") {
  TempDir dir;
  const auto lin = dir.write("lin.ini", config("-x1", "[0, 1]"));
  const auto out = (dir.path() / "tube.csv").string();
  const Run r = run("reach " + lin + " --t-end 1 --step 1e-3 --output " + out);
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = lines(text.str());
  REQUIRE(rows.size() == 1002);
  CHECK(rows[0] == "t,lower_1,upper_1");
  const auto last = csv_numbers(rows.back());
  CHECK(last[0] == 1.0);
  CHECK(std::fabs(last[1] + std::sinh(1.0)) <= 1e-6);
  CHECK(std::fabs(last[2] - std::cosh(1.0)) <= 1e-6);

  const auto point = csv_numbers(lines(run("reach " + lin + " --t-end 1 --step 1e-3 --x0-lo 1 --x0-hi 1").out).back());
  CHECK(std::fabs(point[1] - std::exp(-1.0)) <= 1e-6);
  CHECK(std::fabs(point[2] - std::exp(-1.0)) <= 1e-6);

  const Run zero = run("reach " + lin + " --t-end 0 --x0-lo 0.25 --x0-hi 0.5");
  CHECK(zero.out == "t,lower_1,upper_1\n0,0.25,0.5\n");

  // row count floor(T/h) + 1 even when h does not divide T
  CHECK(lines(run("reach " + lin + " --t-end 1 --step 0.3").out).size() == 1 + 4);

  const auto metzler = dir.write("m.ini",
                                 "[system]\ndim = 2\nf1 = \"-x1 + x2\"\nf2 = \"x1 - x2\"\n[domain]\nx1 = [0, 1]\nx2 = [0, 1]\n"
                                 "[options]\nt_end = 0.5\nstep = 0.1\n");
  const auto mrows = lines(run("reach " + metzler).out);
  CHECK(mrows[0] == "t,lower_1,lower_2,upper_1,upper_2");
  CHECK(mrows.size() == 7);

  CHECK(run("reach " + lin + " --x0-lo 1 --x0-hi 0").code == 1);
  CHECK(run("reach " + metzler + " --x0-lo 0 --x0-hi 1").code == 1);
}

TEST_CASE("tv prints the variation and the Jordan table") {
  const Run s = run("tv --expr \"sin(x1)\" --a 0 --b 6.283185307179586 --tol 1e-8");
  CHECK(s.code == 0);
  const auto rows = lines(s.out);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0].rfind("TV = ", 0) == 0);
  CHECK(std::fabs(std::stod(rows[0].substr(5)) - 4.0) <= 1e-8);
  CHECK(rows[1] == "x f f+ f-");

  const Run sq = run("tv --expr \"x1^2\" --a -1 --b 1 --rows 3");
  CHECK(sq.out == "TV = 2\nx f f+ f-\n-1 1 0 1\n0 0 1 -1\n1 1 2 -1\nbounds = [-1, 3]\n");

  const Run c = run("tv --expr 7 --a 0 --b 1 --rows 2");
  CHECK(c.out == "TV = 0\nx f f+ f-\n0 7 0 7\n1 7 0 7\nbounds = [7, 7]\n");

  const Run csv = run("tv --expr \"x1^2\" --a -1 --b 1 --rows 2 --format csv");
  CHECK(csv.out == "x,f,f_plus,f_minus\n-1,1,0,1\n1,1,2,-1\n# TV,2\n# bounds,-1,3\n");
}

TEST_CASE("exit codes") {
  TempDir dir;
  const Run bad_domain =
      run("decompose " + dir.write("bad.ini", "[system]\ndim = 2\nf1 = \"x1 + x2^3\"\n[domain]\nx1 = [-inf, 1]\nx2 = [0, 1]\n"));
  CHECK(bad_domain.code == 1);
  CHECK(bad_domain.out.find("domain must be finite") != std::string::npos);
  CHECK(run("decompose " + (dir.path() / "missing.ini").string()).code == 1);
  CHECK(run("decompose " + dir.write("syntax.ini", config("x1 +", "[0, 1]"))).code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("--help").code == 0);

  const Run unbounded = run("bound " + dir.write("unb.ini", config("1/x1", "[-1, 1]")));
  CHECK(unbounded.code == 2);
  CHECK(unbounded.out.find("d f1 / d x1") != std::string::npos);
  CHECK(run("decompose " + dir.write("unb2.ini", config("1/x1", "[-1, 1]"))).code == 2);

  const Run blowup = run("reach " + dir.write("blow.ini", config("x1^2", "[1, 2]")) + " --t-end 2 --step 1e-3");
  CHECK(blowup.code == 3);
  CHECK(blowup.out.find("t = 0.5") != std::string::npos);

  const Run nonconv = run("tv --expr \"abs(sin(1/x1))\" --a 1e-4 --b 1");
  CHECK(nonconv.code == 4);

  CHECK(run("tv --expr \"x1\" --a 1 --b 0").code == 1);
  CHECK(run("tv --expr \"x2\" --a 0 --b 1").code == 1);
}
