#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string gridctl_bin() {
    const char* env = std::getenv("GRIDCTL_BIN");
    return env ? env : "./build/tools/gridctl";
}

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/gridctl_test_out.txt";
    const std::string cmd = gridctl_bin() + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string first_verdict_line(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line.rfind("c ", 0) != 0) return line;
    return "";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli solve verdicts and exit codes") {
    run("gen grid --rows 2 --cols 2 --output /tmp/cli_c4.gr");
    auto yes = run("solve --input /tmp/cli_c4.gr -k 0");
    CHECK(yes.exit_code == 0);
    CHECK(first_verdict_line(yes.stdout_text) == "s YES");

    auto no = run("solve --input /tmp/cli_c4.gr -k 0 --mode path");
    CHECK(no.exit_code == 0);
    CHECK(first_verdict_line(no.stdout_text) == "s NO");

    auto annotated = run("solve --input /tmp/cli_c4.gr -k 0 --mode annotated:2,2,1,2,4,3");
    CHECK(annotated.exit_code == 0);
    CHECK(first_verdict_line(annotated.stdout_text) == "s YES");

    auto missing = run("solve --input /tmp/cli_missing.gr -k 0");
    CHECK(missing.exit_code == 2);

    std::ofstream bad("/tmp/cli_bad.gr");
    bad << "p graph 2 1\ne 1 1\n";
    bad.close();
    CHECK(run("solve --input /tmp/cli_bad.gr -k 0").exit_code == 2);

    CHECK(run("solve -k 0").exit_code == 2);  // missing --input
}

TEST_CASE("cli certificate round trip and tampering") {
    run("gen grid-split --rows 2 --cols 3 -k 2 --seed 11 --output /tmp/cli_s.gr "
        "--certificate /tmp/cli_s.cert");
    auto v = run("verify --input /tmp/cli_s.gr --certificate /tmp/cli_s.cert -k 2");
    CHECK(v.exit_code == 0);
    CHECK(first_verdict_line(v.stdout_text) == "accept");

    auto solved = run("solve --input /tmp/cli_s.gr -k 2 --certificate /tmp/cli_solved.cert "
                      "--oracle-check");
    CHECK(solved.exit_code == 0);
    CHECK(first_verdict_line(solved.stdout_text) == "s YES");
    auto v2 = run("verify --input /tmp/cli_s.gr --certificate /tmp/cli_solved.cert -k 2");
    CHECK(first_verdict_line(v2.stdout_text) == "accept");

    // tamper: move vertex 1 to a cell it does not occupy
    std::string cert = slurp("/tmp/cli_solved.cert");
    auto pos = cert.find("w 1 ");
    REQUIRE(pos != std::string::npos);
    auto eol = cert.find('\n', pos);
    const std::string line = cert.substr(pos, eol - pos);
    cert.replace(pos, eol - pos, line == "w 1 1 3" ? "w 1 2 1" : "w 1 1 3");
    std::ofstream tampered("/tmp/cli_tampered.cert");
    tampered << cert;
    tampered.close();
    auto rej = run("verify --input /tmp/cli_s.gr --certificate /tmp/cli_tampered.cert -k 2");
    CHECK(rej.exit_code == 0);
    CHECK(first_verdict_line(rej.stdout_text).rfind("reject", 0) == 0);
}

TEST_CASE("cli gen determinism") {
    run("gen grid-split --rows 2 --cols 3 -k 2 --seed 7 --output /tmp/cli_d1.gr");
    run("gen grid-split --rows 2 --cols 3 -k 2 --seed 7 --output /tmp/cli_d2.gr");
    CHECK(slurp("/tmp/cli_d1.gr") == slurp("/tmp/cli_d2.gr"));
    run("gen grid-split --rows 2 --cols 3 -k 2 --seed 8 --output /tmp/cli_d3.gr");
    CHECK(slurp("/tmp/cli_d1.gr") != slurp("/tmp/cli_d3.gr"));
}

TEST_CASE("cli oracle budget exit code") {
    run("gen random --n 8 --m 12 --seed 5 --connected --output /tmp/cli_r.gr");
    CHECK(run("oracle --input /tmp/cli_r.gr -k 4 --budget 3").exit_code == 3);
    auto full = run("oracle --input /tmp/cli_r.gr -k 1");
    CHECK(full.exit_code == 0);
    auto line = first_verdict_line(full.stdout_text);
    CHECK((line == "s YES" || line == "s NO"));
}

TEST_CASE("cli kernelize outputs") {
    run("gen grid --rows 3 --cols 4 --output /tmp/cli_g34.gr");
    auto rep = run("kernelize --input /tmp/cli_g34.gr -k 1 --output /tmp/cli_kernel.gr");
    CHECK(rep.exit_code == 0);
    CHECK(rep.stdout_text.find("bound=627") != std::string::npos);
    CHECK(slurp("/tmp/cli_kernel.gr").find("c kernel k=1 rr3=0") != std::string::npos);

    // RR2 NO: star with center degree 8
    std::ofstream star("/tmp/cli_star.gr");
    star << "p graph 9 8\n";
    for (int leaf = 2; leaf <= 9; ++leaf) star << "e 1 " << leaf << "\n";
    star.close();
    auto no = run("kernelize --input /tmp/cli_star.gr -k 1");
    CHECK(first_verdict_line(no.stdout_text) == "s NO");
}

TEST_CASE("cli bench restart") {
    run("gen grid-split --rows 2 --cols 2 -k 1 --seed 1 --output /tmp/cli_bench_i1.gr");
    std::system("rm -rf /tmp/cli_bench_dir && mkdir -p /tmp/cli_bench_dir");
    run("gen grid-split --rows 2 --cols 2 -k 1 --seed 1 --output /tmp/cli_bench_dir/a.gr");
    run("gen grid-split --rows 2 --cols 3 -k 1 --seed 2 --output /tmp/cli_bench_dir/b.gr");
    std::system("rm -f /tmp/cli_bench.csv");
    auto first = run("bench --dir /tmp/cli_bench_dir --output /tmp/cli_bench.csv --jobs 2");
    CHECK(first.exit_code == 0);
    auto csv = slurp("/tmp/cli_bench.csv");
    CHECK(csv.find("instance,n,m,k,command") == 0);
    CHECK(csv.find("a.gr,5,") != std::string::npos);
    CHECK(csv.find("b.gr,7,") != std::string::npos);
    CHECK(csv.find(",YES,") != std::string::npos);

    auto again = run("bench --dir /tmp/cli_bench_dir --output /tmp/cli_bench.csv");
    CHECK(again.stdout_text.find("0 new, 2 kept") != std::string::npos);
}

TEST_CASE("cli sat pipeline files") {
    std::ofstream cnf("/tmp/cli_f.cnf");
    cnf << "p cnf 1 1\n1 0\n";
    cnf.close();
    auto r = run("gen sat-pipeline --input /tmp/cli_f.cnf --output-prefix /tmp/cli_hard");
    CHECK(r.exit_code == 0);
    CHECK(slurp("/tmp/cli_hard.nae.cnf").find("p cnf 2 1") != std::string::npos);
    CHECK(slurp("/tmp/cli_hard.hyp").find("p hyp 4 3") != std::string::npos);
    CHECK(slurp("/tmp/cli_hard.gr").find("c k 10") != std::string::npos);
}
