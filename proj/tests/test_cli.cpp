#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

// Binary location injected by the build.
#ifndef ETAQ_CLI_PATH
#error "ETAQ_CLI_PATH must be defined"
#endif

namespace {

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += std::string(ETAQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, n);
    int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::vector<nlohmann::json> parse_lines(const std::string& out) {
    std::vector<nlohmann::json> rows;
    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t nl = out.find('\n', pos);
        if (nl == std::string::npos)
            nl = out.size();
        if (nl > pos)
            rows.push_back(nlohmann::json::parse(out.substr(pos, nl - pos)));
        pos = nl + 1;
    }
    return rows;
}

const std::string B = "--spec 3456:24^6*48^-1*72^-1";
const std::string F = "--spec 100:2^2*10^2 --spec 100:2^1*10^2*50^1";

} // namespace

TEST_CASE("usage errors and help") {
    CHECK(run("").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    CHECK(run("bogus-subcommand").exit_code == 2);
    CHECK(run("eta-check").exit_code == 2);          // missing --spec
    CHECK(run("eta-check --spec 100:3^1").exit_code == 2); // 3 | 100 fails
    CHECK(run("verify --target bogus --prime 5").exit_code == 2);
    CHECK(run("verify --target thm-b3").exit_code == 2); // missing --prime
    CHECK(run("hecke " + B).exit_code == 2);             // missing --prime
    CHECK(run("expand " + B + " --format yaml").exit_code == 2);
}

TEST_CASE("expand") {
    Run r = run("expand " + B + " --terms 30 --mod2");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["specs"].size() == 1);
    CHECK(j["ring"] == "gf2");
    CHECK(j["precision"] == 30);
    CHECK(j["valuation"] == 1);
    REQUIRE(j["coefficients"].size() == 30);
    CHECK(j["coefficients"][0] == 0);
    CHECK(j["coefficients"][1] == 1);

    // Integer ring renders coefficients as decimal strings.
    Run ri = run("expand " + B + " --terms 5");
    auto ji = nlohmann::json::parse(ri.out);
    CHECK(ji["ring"] == "int");
    CHECK(ji["coefficients"][1] == "1");

    // Repeated --spec accumulates a sum.
    Run rf = run("expand " + F + " --terms 20 --mod2");
    auto jf = nlohmann::json::parse(rf.out);
    CHECK(jf["specs"].size() == 2);
    CHECK(jf["valuation"] == 1);

    Run rt = run("expand " + B + " --terms 5 --format text");
    CHECK(rt.exit_code == 0);
    CHECK(contains(rt.out, "0\t0\n"));
    CHECK(contains(rt.out, "1\t1\n"));

    CHECK(run("expand " + B + " --terms 30 --max-precision 10").exit_code == 3);
}

TEST_CASE("eta-check") {
    Run r = run("eta-check " + B);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "CUSP_FORM");
    CHECK(j["weight"] == "2");
    CHECK(j["character_raw"] == "55296");
    CHECK(j["character_kernel"] == "6");
    CHECK(j["cusp_orders"].size() == 32);

    CHECK(run("eta-check " + F).exit_code == 0);
    CHECK(run("eta-check --spec 4:1^4*2^6*4^-4").exit_code == 0);

    Run bad = run("eta-check --spec 48:24^2*48^-1");
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.out, "CONDITION_FAILURE"));
    CHECK(run("eta-check --spec 3456:24^-6*48^11*72^-1").exit_code == 1);

    Run text = run("eta-check " + B + " --format text");
    CHECK(text.exit_code == 0);
    CHECK(contains(text.out, "verdict=CUSP_FORM"));
    CHECK(contains(text.out, "cusp d=1 order=31"));
}

TEST_CASE("hecke") {
    Run ann = run("hecke " + B + " --prime 13");
    CHECK(ann.exit_code == 0);
    auto j = nlohmann::json::parse(ann.out);
    CHECK(j["annihilated_mod2"] == true);
    CHECK(j["sturm"] == 1152);
    CHECK(j["chi_p"] == -1);

    Run nz = run("hecke " + B + " --prime 5");
    CHECK(nz.exit_code == 1);
    CHECK(nlohmann::json::parse(nz.out)["first_nonzero_index"] == 5);

    CHECK(run("hecke " + B + " --prime 4").exit_code == 2);  // not prime
    CHECK(run("hecke " + B + " --prime 3").exit_code == 2);  // p | 2N
    CHECK(run("hecke " + F + " --prime 11").exit_code == 0);
}

TEST_CASE("resource caps: flag beats environment beats default") {
    CHECK(run("hecke " + B + " --prime 13 --max-precision 100").exit_code == 3);
    CHECK(run("hecke " + B + " --prime 13", "ETAQ_MAX_PRECISION=100").exit_code ==
          3);
    CHECK(run("hecke " + B + " --prime 13 --max-precision 20000",
              "ETAQ_MAX_PRECISION=100")
              .exit_code == 0);
    CHECK(run("hecke " + B + " --prime 13", "ETAQ_MAX_PRECISION=banana")
              .exit_code == 2);
    CHECK(run("verify --target kz-b25-vanishing --prime 11",
              "ETAQ_MAX_ORACLE_N=100")
              .exit_code == 3);
}

TEST_CASE("search") {
    Run r = run("search " + F + " --residue=-1 --modulus 200 --pmax 200");
    CHECK(r.exit_code == 0);
    auto rows = parse_lines(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["prime"] == 199);
    CHECK(rows[0]["annihilated_mod2"] == true);

    Run all = run("search " + B + " --pmax 10");
    CHECK(all.exit_code == 0); // precondition rejections are data, not caps
    auto arows = parse_lines(all.out);
    REQUIRE(arows.size() == 4);
    CHECK(arows[0]["prime"] == 2);
    CHECK(arows[0].contains("error"));
    CHECK(arows[1]["prime"] == 3);
    CHECK(arows[1].contains("error"));
    CHECK(arows[2]["prime"] == 5);
    CHECK(arows[2]["annihilated_mod2"] == false);
    CHECK(arows[3]["prime"] == 7);

    // A per-prime resource cap turns into exit code 3.
    Run capped =
        run("search " + B + " --residue=-1 --modulus 6912 --pmax 7000");
    CHECK(capped.exit_code == 3);
    auto crows = parse_lines(capped.out);
    REQUIRE(crows.size() == 1);
    CHECK(crows[0]["prime"] == 6911);

    CHECK(run("search " + B + " --modulus 0").exit_code == 2);
}

TEST_CASE("verify") {
    Run b3 = run("verify --target thm-b3 --prime 13 --nmax 500");
    CHECK(b3.exit_code == 0);
    auto j = nlohmann::json::parse(b3.out);
    CHECK(j["target"] == "THM_B3");
    CHECK(j["alpha"] == 7);
    CHECK(j["holds"] == true);
    CHECK(j["n_range"] == nlohmann::json::array({0, 500}));

    Run b3f = run("verify --target thm-b3 --prime 5 --nmax 10");
    CHECK(b3f.exit_code == 1);
    CHECK(nlohmann::json::parse(b3f.out)["first_failure"] == 0);

    Run b21 = run("verify --target thm-b21 --prime 13 --nmax 10");
    CHECK(b21.exit_code == 1);
    CHECK(nlohmann::json::parse(b21.out)["first_failure"] == 2);

    Run b25 = run("verify --target thm-b25 --prime 11 --nmax 50");
    CHECK(b25.exit_code == 0);
    CHECK(nlohmann::json::parse(b25.out)["beta"] == 10);

    CHECK(run("verify --target thm-b3 --prime 4 --nmax 5").exit_code == 2);

    Run eq = run("verify --target eq-1-2");
    CHECK(eq.exit_code == 0);
    auto je = nlohmann::json::parse(eq.out);
    CHECK(je["target"] == "EQ_1_2");
    CHECK(je["p"] == 13);
    CHECK(run("verify --target eq-1-2 --prime 13").exit_code == 0);
    CHECK(run("verify --target eq-1-2 --prime 7").exit_code == 2);

    CHECK(run("verify --target kz-b25-vanishing --prime 11 --nmax 20")
              .exit_code == 0);
    CHECK(run("verify --target kz-b25-vanishing --prime 7").exit_code == 2);

    Run text = run("verify --target thm-b21 --prime 13 --nmax 10 "
                   "--format text");
    CHECK(text.exit_code == 1);
    CHECK(contains(text.out, "THM_B21 p=13 gamma=28"));
    CHECK(contains(text.out, "holds=false first_failure=2"));
}

TEST_CASE("identities") {
    Run r = run("identities --terms 64");
    CHECK(r.exit_code == 0);
    auto rows = parse_lines(r.out);
    REQUIRE(rows.size() == 7);
    for (const auto& row : rows)
        CHECK(row["holds"] == true);
    CHECK(rows[0]["target"] == "KZ_EQ6");
    CHECK(rows[6]["target"] == "A_UNIT");

    CHECK(run("identities --terms 64 --max-precision 10").exit_code == 3);
}

TEST_CASE("output is deterministic") {
    const std::string cmd = "expand " + B + " --terms 50 --mod2";
    Run a = run(cmd);
    Run b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
