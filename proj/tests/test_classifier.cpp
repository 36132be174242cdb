#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "whml/classifier.hpp"
#include "whml/cli.hpp"
#include "whml/io.hpp"

using namespace whml;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "whml");
    std::vector<const char*> argv;
    for (auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = cli_main(int(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

} // namespace

TEST(Classify, LowInvertible)
{
    auto r = classify(0.3, 2, 1.0, ClassifyMode::THEOREM);
    EXPECT_EQ(r.regime, ClassRegime::LOW);
    EXPECT_TRUE(r.bounded);
    EXPECT_TRUE(r.fredholm);
    EXPECT_EQ(r.index, 0);
    EXPECT_EQ(r.invertible, true);
    EXPECT_EQ(r.kernel_trivial, true);
    EXPECT_FALSE(r.alpha_c.has_value());
}

TEST(Classify, HighAboveCritical)
{
    auto r = classify(0.75, 2, 2.3, ClassifyMode::BOTH);
    EXPECT_EQ(r.regime, ClassRegime::HIGH);
    EXPECT_EQ(r.kernel_trivial, true);
    EXPECT_EQ(r.index, -1);
    EXPECT_EQ(r.invertible, false);
    EXPECT_EQ(r.consistent, true);
    ASSERT_TRUE(r.critical_s.has_value());
    EXPECT_NEAR(*r.critical_s, 2.226, 2e-3);
}

TEST(Classify, HighBelowCriticalIsInvertible)
{
    auto r = classify(0.75, 2, 2.2, ClassifyMode::BOTH);
    EXPECT_EQ(r.winding, -1);
    EXPECT_EQ(r.index, 0);
    EXPECT_EQ(r.invertible, true);
    EXPECT_EQ(r.consistent, true);
}

TEST(Classify, CriticalValue)
{
    double crit = 1.5 + alpha_c(0.75);
    auto exact = classify(0.75, 2, crit, ClassifyMode::THEOREM);
    EXPECT_FALSE(exact.fredholm);
    EXPECT_FALSE(exact.index.has_value());
    // the three-decimal value needs a band of paper precision
    ClassifyOptions o;
    o.critical_tol = 1e-3;
    auto r = classify(0.75, 2, 2.226, ClassifyMode::THEOREM, o);
    EXPECT_EQ(r.regime, ClassRegime::HIGH);
    EXPECT_FALSE(r.fredholm);
    auto both = classify(0.75, 2, 2.226, ClassifyMode::BOTH, o);
    EXPECT_FALSE(both.fredholm);
    EXPECT_LT(*both.min_modulus, 0.05);
    // with the default band 2.226 is an ordinary point just below the critical value
    EXPECT_TRUE(classify(0.75, 2, 2.226, ClassifyMode::THEOREM).fredholm);
}

TEST(Classify, Inadmissible)
{
    EXPECT_EQ(classify(0.6, 2, 1.0, ClassifyMode::THEOREM).regime, ClassRegime::INADMISSIBLE);
    EXPECT_EQ(classify(0.3, 2, 1.5, ClassifyMode::BOTH).regime, ClassRegime::INADMISSIBLE);
    EXPECT_EQ(classify(0.3, 2, 0.5 + 1e-10, ClassifyMode::THEOREM).regime, ClassRegime::INADMISSIBLE);
    EXPECT_EQ(classify(0.3, 2, 2.7, ClassifyMode::NUMERIC).regime, ClassRegime::INADMISSIBLE);
    EXPECT_THROW(classify(1.2, 2, 1.0, ClassifyMode::THEOREM), error);
    EXPECT_THROW(classify(0.3, 1.0, 1.0, ClassifyMode::THEOREM), error);
}

TEST(Classify, HighWithSmallAlphaCarriesNote)
{
    auto r = classify(0.3, 2, 1.6, ClassifyMode::THEOREM);
    EXPECT_EQ(r.regime, ClassRegime::HIGH);
    EXPECT_NE(r.notes.find("alpha < 1/2"), std::string::npos);
}

TEST(Classify, NumericLeavesKernelNull)
{
    auto r = classify(0.3, 2, 1.0, ClassifyMode::NUMERIC);
    EXPECT_FALSE(r.kernel_trivial.has_value());
    EXPECT_FALSE(r.invertible.has_value());
    EXPECT_EQ(r.index, 0);
    EXPECT_FALSE(r.notes.empty());
}

TEST(Classify, TheoremAndNumericAgreeOnRandomSample)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        double a = 0.02 + 0.96 * U(rng);
        double p = 1.2 + 3.8 * U(rng), ip = 1 / p;
        bool low = a < 0.5 && U(rng) < 0.5;
        double s = low ? ip + 0.02 + 0.96 * U(rng) : 1 + ip + 0.02 + 0.96 * U(rng);
        if (!low && std::abs(s - (1 + ip + alpha_c(a))) < 0.01)
            continue;
        auto th = classify(a, p, s, ClassifyMode::THEOREM);
        auto nu = classify(a, p, s, ClassifyMode::NUMERIC);
        ASSERT_NE(th.regime, ClassRegime::INADMISSIBLE);
        EXPECT_EQ(th.fredholm, nu.fredholm) << a << " " << p << " " << s;
        EXPECT_EQ(th.index, nu.index) << a << " " << p << " " << s;
        ++checked;
    }
}

TEST(Classify, JsonIsDeterministicAndOrdered)
{
    for (auto m : {ClassifyMode::THEOREM, ClassifyMode::NUMERIC, ClassifyMode::BOTH}) {
        auto a = classify(0.75, 2, 2.3, m).to_json().dump(2);
        auto b = classify(0.75, 2, 2.3, m).to_json().dump(2);
        EXPECT_EQ(a, b);
    }
    auto j = classify(0.75, 2, 2.3, ClassifyMode::BOTH).to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    std::vector<std::string> expect = {"regime",   "bounded",     "fredholm",   "winding", "index",
                                       "kernel_trivial", "invertible", "alpha_c", "critical_s", "notes",
                                       "mode",     "min_modulus", "consistent"};
    EXPECT_EQ(keys, expect);
    std::string txt = j.dump(2);
    EXPECT_EQ(txt.find(" \n"), std::string::npos);
}

TEST(Hash, Fnv1a)
{
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
    EXPECT_EQ(hash_hex("foobar"), "85944171f73967e8");
}

TEST(Cli, AlphacSingle)
{
    auto r = cli({"alphac", "--alpha", "0.5"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_NEAR(std::stod(r.out), 0.4303, 1e-3);
}

TEST(Cli, IndexExample)
{
    auto r = cli({"index", "--alpha", "0.25", "--p", "4", "--s", "0.7"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("winding 0"), std::string::npos);
    EXPECT_NE(r.out.find("\nindex 0"), std::string::npos);
    auto nf = cli({"index", "--alpha", "0.75", "--p", "2", "--s", "2.226", "--fredholm-tol", "1e-3"});
    EXPECT_EQ(nf.rc, 0);
    EXPECT_NE(nf.out.find("NOT_FREDHOLM"), std::string::npos);
}

TEST(Cli, ClassifyBothAgrees)
{
    auto r = cli({"classify", "--alpha", "0.3", "--p", "2", "--s", "1.0", "--mode", "both", "--json"});
    EXPECT_EQ(r.rc, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["consistent"], true);
    EXPECT_EQ(j["regime"], "LOW");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(cli({"classify", "--alpha", "0.3", "--p", "2", "--s", "1", "--bogus"}).rc, 2);
    EXPECT_EQ(cli({}).rc, 2);
    EXPECT_EQ(cli({"classify", "--alpha", "1.4", "--p", "2", "--s", "1"}).rc, 2);
    EXPECT_EQ(cli({"alphac"}).rc, 2);
    EXPECT_EQ(cli({"index", "--alpha", "0.3", "--p", "2", "--s", "1.5"}).rc, 2);
    EXPECT_EQ(cli({"contour", "--alpha", "0.25", "--p", "4", "--s", "0.7", "--out", "/nonexistent/q/x.csv"}).rc, 3);
    EXPECT_EQ(cli({"--help"}).rc, 0);
}

TEST(Cli, FileOutputsAreHashed)
{
    auto dir = std::filesystem::temp_directory_path() / "whml_cli_test";
    std::filesystem::create_directories(dir);
    auto csv = (dir / "loop.csv").string();
    auto r = cli({"contour", "--alpha", "0.25", "--p", "4", "--s", "0.7", "--out", csv, "--points", "128"});
    ASSERT_EQ(r.rc, 0) << r.err;
    std::ifstream in(csv, std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(r.out.find("wrote " + csv + " fnv1a64=" + hash_hex(body)), std::string::npos);
    EXPECT_EQ(body.rfind("segment,t,re,im\n", 0), 0u);

    auto tab = (dir / "ac.csv").string();
    auto t = cli({"alphac", "--grid", "4", "--csv", tab});
    ASSERT_EQ(t.rc, 0);
    std::ifstream tin(tab);
    std::string head;
    std::getline(tin, head);
    EXPECT_EQ(head, "alpha,alpha_c");
    EXPECT_NE(t.out.find("fnv1a64="), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, VerifySuiteReportsAndExitCode)
{
    auto r = cli({"verify", "--suite", "symbols", "--json"});
    EXPECT_EQ(r.rc, 0);
    auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.contains("symbols"));
    for (const auto& rep : j["symbols"])
        EXPECT_EQ(rep["pass"], true) << rep.dump();
    EXPECT_EQ(cli({"verify", "--suite", "nope"}).rc, 2);
}
