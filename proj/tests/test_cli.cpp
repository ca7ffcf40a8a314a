#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nfold/cli.hpp"

using namespace nfold;

namespace {

struct temp_file {
    std::filesystem::path path;
    temp_file(const std::string& name, const std::string& content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream out(path);
        out << content;
    }
    ~temp_file() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

struct cli_result {
    int code;
    std::string out;
    std::string err;
};

cli_result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("partition subcommand pinned output") {
    temp_file f("nfold_t_diag.json", "[[1,0,0],[0,2,0],[0,0,3]]");
    auto r = run({"partition", "--matrix", f.str()});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "{\"parts\":[[0],[1],[2]],\"p\":1,\"S\":3}\n");
}

TEST_CASE("bounds subcommand pinned output") {
    auto r = run({"bounds", "--p", "1", "--delta", "1"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "{\"lemma2\":3}\n");
}

TEST_CASE("solve subcommand exit codes") {
    temp_file feasible("nfold_t_f.json",
                       R"({"objective":{"kind":"linear_max","c":[1,3]},"b_top":[6],
                           "bricks":[{"A":[[1]],"B":[],"b_local":[],"lower":[0],"upper":[5]},
                                     {"A":[[1]],"B":[],"b_local":[],"lower":[0],"upper":[5]}]})");
    auto ok = run({"solve", "--instance", feasible.str()});
    CHECK(ok.code == exit_ok);
    CHECK(ok.out.find("\"objective\":16") != std::string::npos);

    auto logged = run({"solve", "--instance", feasible.str(), "--log-steps"});
    CHECK(logged.code == exit_ok);
    CHECK(logged.err.find("step lambda=") != std::string::npos);
    CHECK(logged.out.find("\"objective\":16") != std::string::npos);

    temp_file infeasible("nfold_t_i.json",
                         R"({"objective":{"kind":"linear_max","c":[1,1]},"b_top":[7],
                             "bricks":[{"A":[[1,1]],"B":[],"b_local":[],"lower":[0,0],"upper":[3,3]}]})");
    CHECK(run({"solve", "--instance", infeasible.str()}).code == exit_infeasible);
}

TEST_CASE("malformed input exits 3 with a position-bearing message") {
    temp_file broken("nfold_t_b.json", "{\"objective\": ");
    auto r = run({"solve", "--instance", broken.str()});
    CHECK(r.code == exit_invalid);
    CHECK(r.err.find("parse error") != std::string::npos);

    CHECK(run({"nonsense"}).code == exit_invalid);
    CHECK(run({"solve", "--instance", "/no/such/file.json"}).code == exit_invalid);
    CHECK(run({"bounds"}).code == exit_invalid);
}

TEST_CASE("help and version exit cleanly") {
    CHECK(run({"--version"}).code == exit_ok);
    CHECK(run({"--help"}).code == exit_ok);
    CHECK(run({"solve", "--help"}).code == exit_ok);
}

TEST_CASE("steinitz subcommand reports the achieved norm") {
    temp_file f("nfold_t_v.json", "[[1],[1],[-1],[-1]]");
    auto r = run({"steinitz", "--vectors", f.str(), "--delta", "1"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("\"max_prefix_norm\":1") != std::string::npos);
}

TEST_CASE("schedule and color subcommands round through files") {
    temp_file sched("nfold_t_s.json", R"({"speeds":[1,2],"types":[{"p":2,"n":3}]})");
    auto r = run({"schedule", "--variant", "cmax", "--instance", sched.str()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("\"objective\":2") != std::string::npos);

    temp_file g("nfold_t_g.json", R"({"adj":[[1,2],[0,2],[0,1]]})");
    auto c = run({"color", "--graph", g.str()});
    CHECK(c.code == exit_ok);
    CHECK(c.out.find("\"sum\":6") != std::string::npos);

    auto o = run({"oracle", "--mode", "color", "--instance", g.str()});
    CHECK(o.code == exit_ok);
    CHECK(o.out.find("\"sum\":6") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
    temp_file f("nfold_t_m.json", "[[1,1,-1]]");
    auto a = run({"graver", "--matrix", f.str()});
    auto b = run({"graver", "--matrix", f.str()});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);

    temp_file sched("nfold_t_s2.json", R"({"speeds":[1],"types":[{"p":2,"n":1,"w":1},{"p":1,"n":1,"w":1}]})");
    auto c = run({"schedule", "--variant", "qswc", "--instance", sched.str()});
    auto d = run({"schedule", "--variant", "qswc", "--instance", sched.str()});
    CHECK(c.out == d.out);
    CHECK(c.out.find("\"objective\":4") != std::string::npos);
}
