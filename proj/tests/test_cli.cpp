#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stabsel/cli.hpp"
#include "stabsel/csv.hpp"
#include "stabsel/sim.hpp"

using namespace stabsel;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "stabsel");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch_dir()
{
    const fs::path dir = fs::temp_directory_path() / "stabsel_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string simulated_csv()
{
    const fs::path path = scratch_dir() / "arx.csv";
    if (!fs::exists(path)) {
        sim::ArxConfig cfg;
        cfg.length = 600;
        cfg.n_true = 3;
        cfg.n_decoy_ar = 6;
        cfg.n_noise = 1;
        cfg.beta = std::vector<double>{0.8, -0.6, 0.5};
        Rng rng(21);
        const auto s = sim::simulate_arx(cfg, rng);
        std::ofstream file(path);
        write_csv(file, s.series);
    }
    return path.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("bound prints the constant and the bound")
{
    auto r = invoke({"bound", "--q", "40", "--p", "104", "--phi", "0.8", "--B", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("C=0.823529\n") != std::string::npos);
    CHECK(r.out.find("bound=25.34\n") != std::string::npos);

    r = invoke({"bound", "--q", "10", "--p", "100", "--l", "0.05"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("phi=0.61\n", 0) == 0);

    r = invoke({"bound", "--q", "0", "--p", "10", "--phi", "0.9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bound=0.00") != std::string::npos);

    const fs::path report = scratch_dir() / "bound.json";
    r = invoke({"bound", "--q", "40", "--p", "104", "--phi", "0.8", "-o", report.string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["bound"].get<double>() == doctest::Approx(25.34).epsilon(1e-3));
    CHECK(j["params"]["q"] == 40);
}

TEST_CASE("configuration errors list every violated field and exit with 2")
{
    auto r = invoke({"bound", "--q", "10", "--p", "100", "--phi", "0.8", "--l", "0.1"});
    CHECK(r.code == 2);
    auto j = nlohmann::json::parse(r.err);
    CHECK(j["error"]["kind"] == "config");
    CHECK(j["error"]["exit_code"] == 2);

    cli::RunConfig c;
    c.command = cli::Command::select;
    c.block_length = "auto:x";
    c.q = "-3";
    c.phi = "1.5";
    c.B = 0;
    c.path_ratio = 2.0;
    const auto errors = cli::validate(c);
    for (const char* field : {"input_csv", "target", "block_length", "q:", "phi:", "B:", "path_ratio"}) {
        CHECK_MESSAGE(std::any_of(errors.begin(), errors.end(),
                                  [&](const std::string& e) { return e.rfind(field, 0) == 0; }),
                      field);
    }
    std::ostringstream out, err;
    CHECK(cli::run(c, out, err) == 2);
    j = nlohmann::json::parse(err.str());
    CHECK(j["error"]["messages"].size() == errors.size());

    r = invoke({"bound", "--q", "60", "--p", "100", "--phi", "0.8"});
    CHECK(r.code == 2);
    r = invoke({"bound", "--q", "50", "--p", "100", "--l", "0.001"});
    CHECK(r.code == 2);
    r = invoke({"frobnicate"});
    CHECK(r.code == 2);
    r = invoke({"forecast", "-i", "x.csv", "-t", "y", "--methods", "AIC"});
    CHECK(r.code == 2);
}

TEST_CASE("data problems exit with 3 before any computation")
{
    const std::string csv = simulated_csv();
    auto r = invoke({"select", "-i", csv, "-t", "y", "-x", "x1", "nope", "ghost"});
    CHECK(r.code == 3);
    const auto j = nlohmann::json::parse(r.err);
    const std::string msg = j["error"]["messages"][0];
    CHECK(msg.find("nope") != std::string::npos);
    CHECK(msg.find("ghost") != std::string::npos);

    r = invoke({"select", "-i", (scratch_dir() / "does_not_exist.csv").string(), "-t", "y"});
    CHECK(r.code == 3);
}

TEST_CASE("numerical failures exit with 4")
{
    const fs::path path = scratch_dir() / "flat.csv";
    {
        std::ofstream f(path);
        f << "y,x\n";
        for (int i = 0; i < 100; ++i) f << "1," << (i % 7) << '\n';
    }
    const auto r = invoke({"select", "-i", path.string(), "-t", "y", "--q", "1", "-a", "5"});
    CHECK(r.code == 4);
    CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "numerical");
}

TEST_CASE("select writes a complete, reproducible report")
{
    const std::string csv = simulated_csv();
    const fs::path a = scratch_dir() / "select_a.json";
    const fs::path b = scratch_dir() / "select_b.json";
    const std::vector<std::string> base{"select", "-i", csv, "-t", "y", "--p-tilde", "3", "--seed", "5", "--B", "20"};
    auto args = base;
    args.insert(args.end(), {"--workers", "1", "-o", a.string()});
    REQUIRE(invoke(args).code == 0);
    args = base;
    args.insert(args.end(), {"--workers", "3", "-o", b.string()});
    REQUIRE(invoke(args).code == 0);
    CHECK(slurp(a) == slurp(b));

    const auto j = nlohmann::json::parse(slurp(a));
    CHECK(j["params"]["seed"] == 5);
    CHECK(j["params"]["B"] == 20);
    CHECK(j["params"]["input_csv"] == csv);
    CHECK(j["params"]["resolved"]["p"] == 3 + 10);
    CHECK(j["params"]["resolved"]["q"] == 2);  // floor(0.2 * 13)
    CHECK(j["params"]["resolved"]["block_length"] == 25);  // ceil(sqrt(600))
    CHECK(j["params"].find("workers") == j["params"].end());
    CHECK(j["scores"].size() == 13);
    CHECK(j["scores"][0]["name"] == "y_lag1");
    CHECK(j["phi"] == 0.8);
    CHECK(j["error_constant"].get<double>() == doctest::Approx(4 * (0.2 + 0.025) / 1.05));
    CHECK(j["stable_set"].size() <= 2);
    CHECK(j["stable_set_within_q"] == true);
    CHECK(j.contains("lambda_q"));
    CHECK(j.contains("bound"));
}

TEST_CASE("select with a solved threshold and audit runs")
{
    const std::string csv = simulated_csv();
    const auto r = invoke({"select", "-i", csv, "-t", "y", "--exogenous", "x1", "x2", "decoy1", "--q", "2", "--l",
                           "0.5", "--B", "10", "-a", "auto:2", "--seasonality", "12", "--audit"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["params"]["resolved"]["block_length"] == 24);
    CHECK(j["params"]["exogenous"] == std::vector<std::string>{"x1", "x2", "decoy1"});
    CHECK(j["runs"].size() == 10);
    CHECK(j["phi"].get<double>() > 0.5);
}

TEST_CASE("forecast emits per-method results and a table")
{
    const std::string csv = simulated_csv();
    const fs::path table = scratch_dir() / "table.csv";
    const auto r = invoke({"forecast", "-i", csv, "-t", "y", "--p-tilde", "3", "--B", "10", "--methods", "q-BPA",
                           "q-Lasso", "Lasso", "--dataset", "sim", "--table-csv", table.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 3);
    CHECK(j["results"][1]["method"] == "q-Lasso");
    const std::string text = slurp(table);
    CHECK(text.rfind("method,sim\nq-BPA,", 0) == 0);
}

TEST_CASE("simulate writes a sweep CSV")
{
    const fs::path out = scratch_dir() / "sweep.csv";
    const fs::path series = scratch_dir() / "series.csv";
    const auto r = invoke({"simulate", "--length", "300", "--n-true", "2", "--n-decoy", "3", "--seeds", "2",
                           "--sigmas", "0", "1", "--B", "5", "-o", out.string(), "--series-csv", series.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("sigma,seed,method,tpr,fpr\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2 * 3);
    CHECK(slurp(series).rfind("y,x1,x2,decoy1", 0) == 0);
}
