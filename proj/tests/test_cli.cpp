#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcert/dualcert.hpp"

namespace fs = std::filesystem;

namespace {

const std::string data = QCERT_DATA_DIR;
const std::string golden = data + "/../certificates/7-1-4-selfdual.json";

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(QCERT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("qcert-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("enum") {
  auto r = run("enum " + data + "/codes/five_qubit.txt");
  CHECK(r.code == 0);
  CHECK(r.out.find("A = (4,0,0,0,60,0)\n") != std::string::npos);
  CHECK(r.out.find("lambda[4,4,3,1] = 180\n") != std::string::npos);
  auto bell = run("enum " + data + "/codes/bell.txt");
  CHECK(bell.out.find("A = (1,0,3)\n") != std::string::npos);
  CHECK(run("enum " + data + "/invalid/anticommuting.txt").code == 4);
  CHECK(run("enum /nonexistent/file.txt").code == 4);
}

TEST_CASE("bound") {
  CHECK(run("bound --n 6 --delta 5").out == "0\n");
  auto dir = scratch("bound");
  auto r = run("bound --n 8 --delta 3 --out " + (dir / "p.json").string());
  CHECK(r.code == 0);
  CHECK(r.out == "9\n");
  std::string prov = slurp(dir / "p.json");
  CHECK(prov.find("\"farkas\"") != std::string::npos);
  CHECK(prov.find("\"witness\"") != std::string::npos);
}

TEST_CASE("verify") {
  auto ok = run("verify " + golden);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"status\":\"verified\"") != std::string::npos);

  auto dir = scratch("verify");
  std::string text = slurp(golden);
  {
    std::ofstream f(dir / "trunc.json");
    f << text.substr(0, text.size() / 3);
  }
  CHECK(run("verify " + (dir / "trunc.json").string()).code == 4);

  auto cert = qcert::read_certificate(golden);
  auto& m = cert.Y.begin()->second;
  m(0, 0) = -m(0, 0);
  qcert::write_certificate(cert, (dir / "7-1-4-selfdual.json").string());
  auto bad = run("verify " + (dir / "7-1-4-selfdual.json").string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("\"status\":\"rejected\"") != std::string::npos);
  CHECK(bad.out.find("\"location\"") != std::string::npos);
}

TEST_CASE("certify") {
  auto dir = scratch("certify");
  auto good = run("certify --n 7 --K 1 --delta 4 --variant selfdual --precision 15 --out " + dir.string());
  CHECK(good.code == 0);
  CHECK(fs::exists(dir / "7-1-4-selfdual.json"));
  CHECK(fs::exists(dir / "7-1-4-selfdual.transcript.txt"));
  CHECK(run("verify " + (dir / "7-1-4-selfdual.json").string()).code == 0);

  auto exists = run("certify --n 5 --K 2 --delta 3 --precision 30 --out " + dir.string());
  CHECK(exists.code == 1);
  CHECK_FALSE(fs::exists(dir / "5-2-3-general.json"));
  CHECK(fs::exists(dir / "5-2-3-general.transcript.txt"));

  CHECK(run("certify --n 4 --K 8 --delta 2 --out " + dir.string()).code == 2);
  CHECK(run("certify --n 16 --K 2 --delta 3 --out " + dir.string()).code == 3);
  CHECK(run("certify --n 7 --K 1 --delta 4 --variant selfdual --denominator-schedule 1e3,10 --out " + dir.string())
            .code == 2);
  CHECK(run("certify --n 7 --K 1 --delta 4 --variant selfdual --denominator-schedule x --out " + dir.string())
            .code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("bound --n 6").code == 2);
  CHECK(run("bound --n 6 --delta 3 --variant nonsense").code == 2);
  CHECK(run("bound --n 4 --delta 9").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("table") {
  auto dir = scratch("table");
  std::string common = "table --n-max 8 --store " + data + "/../certificates --codes " + data + "/codes --out ";
  CHECK(run(common + (dir / "a.tsv").string()).code == 0);
  CHECK(run(common + (dir / "b.tsv").string()).code == 0);
  std::string a = slurp(dir / "a.tsv");
  CHECK(a == slurp(dir / "b.tsv"));
  CHECK(a.rfind("n\tdelta\tvariant\tlower\tlower_source\tlp_upper\tupper\tmethod\tcertificate\n", 0) == 0);
  CHECK(a.find('\r') == std::string::npos);
  CHECK(a.find("8\t3\tgeneral\t-\t-\t9\t8\tSDP-cert\t8-9-3-general.json\n") != std::string::npos);
  CHECK(a.find("7\t4\tgeneral\t-\t-\t1\t0\tSDP-cert\t7-1-4-selfdual.json\n") != std::string::npos);
  CHECK(a.find("5\t3\tgeneral\t2\tfive_qubit.txt\t2\t2\tLP\t-\n") != std::string::npos);
  CHECK(a.find("2\t4\tgeneral\t-\t-\t0\t0\ttrivial\t-\n") != std::string::npos);
}

TEST_CASE("sdp and graph") {
  auto dir = scratch("sdp");
  auto path = (dir / "d.dat-s").string();
  CHECK(run("sdp export --n 7 --K 1 --delta 4 --variant selfdual --out " + path).code == 0);
  CHECK(fs::exists(path));
  CHECK(fs::exists(path + ".exact.json"));
  CHECK(run("sdp export --n 5 --K 2 --delta 3 --side primal --out " + path).code == 0);
  auto built = run("sdp build --n 5 --K 2 --delta 3");
  CHECK(built.code == 0);
  CHECK(built.out.find("\"equalities\"") != std::string::npos);
  auto solved = run("sdp solve --n 7 --K 1 --delta 4 --variant selfdual --precision 15");
  CHECK(solved.code == 0);
  CHECK(solved.out.find("status optimal") != std::string::npos);
  auto g = run("graph --n 3 --delta 2 --out " + (dir / "theta.dat-s").string());
  CHECK(g.code == 0);
  CHECK(g.out.find("vertices") != std::string::npos);
}
