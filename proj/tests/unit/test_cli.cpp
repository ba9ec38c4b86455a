#include <gtest/gtest.h>

#include <sstream>

#include "balfact/core/cert.hpp"
#include "cli.hpp"

using balfact::Json;

namespace {

struct Result {
    int code;
    std::string out, err;

    std::vector<Json> lines() const {
        std::vector<Json> v;
        std::istringstream s(out);
        for (std::string line; std::getline(s, line);)
            if (!line.empty()) v.push_back(Json::parse(line));
        return v;
    }
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = balfact::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

bool is_cert(const Json& j) { return j.contains("factors") && j.contains("power") && j.contains("ring"); }

}  // namespace

TEST(Cli, ClassifyExamples) {
    auto r = run({"classify", "--q", "7", "--k", "3"});
    EXPECT_EQ(r.code, 1);
    auto j = r.lines().at(0);
    EXPECT_EQ(j["answer"], false);
    EXPECT_EQ(j["rule"], "F7-k-in-2-3");
    EXPECT_EQ(run({"classify", "--q", "8", "--k", "3"}).code, 0);
}

TEST(Cli, CensusExample) {
    auto r = run({"census", "--field", "5", "--k", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.lines().at(0)["missing"], Json::array({"3"}));
    EXPECT_TRUE(r.err.empty());
    auto p = run({"--pretty", "census", "--field", "5", "--k", "4"});
    EXPECT_EQ(p.out, r.out);
    EXPECT_FALSE(p.err.empty());
}

TEST(Cli, VerifyThreeAsFourRationals) {
    const std::string cert =
        R"({"ring":"Q","target":"3","k":4,"factors":["363/70","20/77","-49/110","-5"],"power":false,"provenance":"fixed"})";
    auto r = run({"verify"}, cert);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.lines().at(0)["ok"], true);
    auto bad = run({"verify"}, R"({"ring":"Q","target":"3","k":4,"factors":["363/70","20/77","-49/110","-4"],"power":false})");
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(run({"verify"}, "{not json").code, 2);
    EXPECT_EQ(run({"verify"}, "").code, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"classify", "--q", "7"}).code, 2);
    EXPECT_EQ(run({"classify", "--q", "6", "--k", "3"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    auto bad = run({"search", "--ring", "mat:3:2", "--a", "1,2", "--k", "2"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("--a"), std::string::npos);
    EXPECT_EQ(run({"search", "--ring", "mat:3:2", "--a", "0,1,0,0", "--k", "2"}).code, 1);
    EXPECT_EQ(run({"rational", "--target", "3", "--k", "4", "--budget", "10"}).code, 3);
    EXPECT_EQ(run({"--budget", "10", "rational", "--target", "3", "--k", "4"}).code, 3);
    EXPECT_EQ(run({"algebra", "--ring", "quot:3:0,0,1", "--a", "1,1", "--n", "3"}).code, 1);
}

TEST(Cli, HelpForEveryCommand) {
    auto top = run({"--help"});
    EXPECT_EQ(top.code, 0);
    for (const char* cmd : {"classify", "construct", "search", "census", "curve", "algebra", "matrix", "rational",
                            "mason", "verify"}) {
        EXPECT_NE(top.out.find(cmd), std::string::npos) << cmd;
        auto h = run({cmd, "--help"});
        EXPECT_EQ(h.code, 0) << cmd;
        EXPECT_NE(h.out.find("Usage"), std::string::npos) << cmd;
    }
}

TEST(Cli, EmittedCertificatesRoundTrip) {
    const std::vector<std::vector<std::string>> commands = {
        {"construct", "--field", "7", "--a", "3", "--k", "5"},
        {"construct", "--field", "9", "--a", "1,1", "--k", "4", "--nonpower"},
        {"construct", "--stored"},
        {"search", "--ring", "mat:3:2", "--a", "0,1,0,0", "--k", "3"},
        {"search", "--ring", "local:3:2", "--a", "1,1", "--k", "4", "--nonpower"},
        {"search", "--ring", "quot:2:1,1,1", "--a", "0,1", "--k", "5"},
        {"algebra", "--ring", "quot:3:1,0,1", "--a", "1,1", "--n", "3"},
        {"algebra", "--ring", "local:5:3", "--a", "2,1,4", "--n", "4"},
        {"algebra", "--ring", "quot:5:0,0,1", "--a", "1,1", "--n", "5"},
        {"matrix", "--field", "3", "--dim", "2", "--entries", "0,1,0,0", "--k", "3"},
        {"matrix", "--field", "2^2", "--dim", "2", "--entries", "1,0,0,1,0,0,1,1", "--k", "5"},
        {"rational", "--target", "3", "--k", "4", "--height", "400"},
        {"rational", "--target", "-4", "--k", "2"},
        {"rational", "--target", "-6", "--k", "3"},
        {"rational", "--target", "7/3", "--k", "6"},
        {"rational", "--target", "-1/27", "--k", "11"},
    };
    std::string all;
    int certs = 0;
    for (const auto& c : commands) {
        auto r = run(c);
        ASSERT_EQ(r.code, 0) << c[0] << " " << r.err;
        for (const auto& j : r.lines()) {
            ASSERT_TRUE(is_cert(j)) << j.dump();
            all += j.dump() + "\n";
            ++certs;
        }
    }
    auto v = run({"verify"}, all);
    EXPECT_EQ(v.code, 0) << v.err;
    auto res = v.lines();
    ASSERT_EQ(static_cast<int>(res.size()), certs);
    for (const auto& j : res) EXPECT_EQ(j["ok"], true) << j.dump();
}

TEST(Cli, CurveLinesAndMason) {
    auto r = run({"curve", "--field", "7", "--family", "A"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.lines().size(), 6u);
    auto m = run({"mason", "--field", "Q", "--x", "0,2,1", "--y", "1"});
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(m.lines().at(0)["verdict"], "DegreeBound");
    auto f = run({"mason", "--field", "3", "--x", "0,0,0,1", "--y", "1"});
    EXPECT_EQ(f.lines().at(0)["verdict"], "AllDerivativesVanish");
    auto refute = run({"mason", "--field", "2", "--refute", "--max-deg", "3"});
    EXPECT_EQ(refute.code, 1);
    EXPECT_TRUE(refute.lines().at(0)["hits"].empty());
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
    for (auto args : std::vector<std::vector<std::string>>{{"census", "--field", "3^2", "--k", "3"},
                                                           {"curve", "--field", "13", "--family", "B"},
                                                           {"rational", "--target", "5", "--k", "4"}}) {
        auto one = run(args);
        args.insert(args.begin(), {"--threads", "3"});
        auto many = run(args);
        EXPECT_EQ(one.out, many.out) << args.back();
    }
}

TEST(Cli, ComplexMatrix) {
    auto r = run({"matrix", "--complex", "--dim", "2", "--entries", "2,0:1,0,3", "--k", "4"});
    EXPECT_EQ(r.code, 0);
    auto j = r.lines().at(0);
    EXPECT_LE(j["product_residual"].get<double>(), 1e-9);
    EXPECT_EQ(j["factors"].size(), 4u);
    EXPECT_EQ(run({"matrix", "--complex", "--dim", "2", "--entries", "1,0,0,1.00000001", "--k", "3"}).code, 1);
}
