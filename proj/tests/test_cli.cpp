// End-to-end tests of the command-line tool: exit codes, pipeline runs on a
// synthetic corpus, determinism of outputs, and golden-file comparisons.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "support/fixtures.hpp"

namespace {

std::string binary() {
    const char* bin = std::getenv("SBEAUTY_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SBEAUTY_BIN must point at the sbeauty binary");
    return bin;
}

std::string golden_dir() {
    const char* dir = std::getenv("SBEAUTY_GOLDEN_DIR");
    REQUIRE_MESSAGE(dir != nullptr, "SBEAUTY_GOLDEN_DIR must point at tests/golden");
    return dir;
}

int run(const std::string& args, const std::string& log) {
    const std::string cmd = binary() + " " + args + " >" + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

// The small committed reference corpus: synth seed 7, 300 background papers.
const char* kGoldenSynthArgs =
    "--synth-config {DIR}/synth.json";

std::string golden_synth_config() {
    return R"({
  "n_publications": 600,
  "year_min": 1980,
  "year_max": 2014,
  "pub_growth_per_year": 0.04,
  "refs_per_pub": 3.0,
  "pa_strength": 0.3,
  "n_planted_sbs": 6,
  "sb_cs_target": 0.8,
  "sb_ca_target": 6.0,
  "snpr_fraction": 0.5,
  "pcy_mean": 10.0,
  "pcy_sd": 3.0,
  "inventor_author_plant_rate": 1.0,
  "homonym_rate": 0.0,
  "background_patent_rate": 0.01,
  "seed": 7
})";
}

struct Pipeline {
    fixtures::TempDir dir;
    std::string corpus_dir;
    std::string out_dir;

    Pipeline() {
        corpus_dir = dir.file("corpus");
        out_dir = dir.file("out");
        fixtures::write_file(dir.file("synth.json"), golden_synth_config());
        std::string args = kGoldenSynthArgs;
        args.replace(args.find("{DIR}"), 5, dir.path());
        REQUIRE(run("synth " + args + " --out " + corpus_dir, dir.file("synth.log")) == 0);
    }

    std::string corpus_flags() const {
        return "--pubs " + corpus_dir + "/publications.jsonl --citations " + corpus_dir +
               "/citations.csv --patents " + corpus_dir + "/patents.jsonl";
    }
};

}  // namespace

TEST_CASE("help exits 0, unknown flags exit 1, missing data exits 2") {
    fixtures::TempDir dir;
    CHECK(run("--help", dir.file("h.log")) == 0);
    CHECK(run("detect-sb --help", dir.file("h2.log")) == 0);
    CHECK(run("--no-such-flag", dir.file("e1.log")) == 1);
    CHECK(run("detect-sb --bogus", dir.file("e2.log")) == 1);
    CHECK(run("detect-sb --pubs /nonexistent.jsonl --citations x --patents y --out " +
                  dir.path(),
              dir.file("e3.log")) == 2);
    CHECK(run("", dir.file("e4.log")) == 1);  // a subcommand is required
    // Usage errors in parameter values are exit 1.
    CHECK(run("awakening --pub x --years 1990 --pubs /nonexistent", dir.file("e5.log")) ==
          1);
}

TEST_CASE("config files are validated and unknown keys rejected") {
    fixtures::TempDir dir;
    fixtures::write_file(dir.file("bad.json"), R"({"corpsu": {}})");
    CHECK(run("--config " + dir.file("bad.json") + " ingest", dir.file("c1.log")) == 1);
    fixtures::write_file(dir.file("bad2.json"), R"({"sb": {"sleeps": 10}})");
    CHECK(run("--config " + dir.file("bad2.json") + " ingest", dir.file("c2.log")) == 1);
}

TEST_CASE("the config file can come from the environment variable") {
    Pipeline p;
    fixtures::write_file(p.dir.file("run.json"),
                         std::string("{\"corpus\": {\"publications\": \"") + p.corpus_dir +
                             "/publications.jsonl\", \"citations\": \"" + p.corpus_dir +
                             "/citations.csv\", \"patents\": \"" + p.corpus_dir +
                             "/patents.jsonl\"}}");
    const std::string cmd = "SBEAUTY_CONFIG=" + p.dir.file("run.json") + " " + binary() +
                            " ingest >" + p.dir.file("env.log") + " 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    const std::string log = fixtures::read_file(p.dir.file("env.log"));
    CHECK(log.find("publications: 606") != std::string::npos);

    // An explicit flag beats the environment.
    const std::string cmd2 = "SBEAUTY_CONFIG=/nonexistent.json " + binary() + " --config " +
                             p.dir.file("run.json") + " ingest >" + p.dir.file("env2.log") +
                             " 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd2.c_str())) == 0);
}

TEST_CASE("the full pipeline runs and its outputs are byte-deterministic") {
    Pipeline p;
    const std::string flags = p.corpus_flags();

    CHECK(run("ingest " + flags, p.dir.file("ingest.log")) == 0);
    CHECK(run("validate " + flags, p.dir.file("validate.log")) == 0);
    REQUIRE(run("detect-sb " + flags + " --out " + p.out_dir, p.dir.file("d.log")) == 0);
    REQUIRE(run("link-patents " + flags + " --out " + p.out_dir, p.dir.file("l.log")) == 0);
    REQUIRE(run("lag-stats " + flags + " --bucket 3 --out " + p.out_dir,
                p.dir.file("s.log")) == 0);
    REQUIRE(run("representation " + flags + " --key field --out " + p.out_dir,
                p.dir.file("r.log")) == 0);
    REQUIRE(run("cohort-stats " + flags + " --split-by-snpr --out " + p.out_dir,
                p.dir.file("cs.log")) == 0);
    REQUIRE(run("inventor-author " + flags + " --out " + p.out_dir,
                p.dir.file("ia.log")) == 0);

    // Re-running into a second directory yields byte-identical files.
    const std::string out2 = p.dir.file("out2");
    REQUIRE(run("detect-sb " + flags + " --out " + out2, p.dir.file("d2.log")) == 0);
    CHECK(fixtures::read_file(p.out_dir + "/sb_records.csv") ==
          fixtures::read_file(out2 + "/sb_records.csv"));

    SUBCASE("synth regeneration is byte-identical") {
        const std::string corpus2 = p.dir.file("corpus2");
        std::string args = kGoldenSynthArgs;
        args.replace(args.find("{DIR}"), 5, p.dir.path());
        REQUIRE(run("synth " + args + " --out " + corpus2, p.dir.file("synth2.log")) == 0);
        for (const char* name :
             {"publications.jsonl", "citations.csv", "patents.jsonl", "ground_truth.jsonl"})
            CHECK(fixtures::read_file(p.corpus_dir + "/" + name) ==
                  fixtures::read_file(corpus2 + "/" + name));
    }
}

TEST_CASE("pipeline outputs match the committed golden files") {
    Pipeline p;
    const std::string flags = p.corpus_flags();
    REQUIRE(run("detect-sb " + flags + " --out " + p.out_dir, p.dir.file("d.log")) == 0);
    REQUIRE(run("link-patents " + flags + " --out " + p.out_dir, p.dir.file("l.log")) == 0);
    REQUIRE(run("lag-stats " + flags + " --bucket 3 --out " + p.out_dir,
                p.dir.file("s.log")) == 0);
    REQUIRE(run("inventor-author " + flags + " --out " + p.out_dir,
                p.dir.file("ia.log")) == 0);

    for (const char* name :
         {"sb_records.csv", "snprs.csv", "lag_stats.csv", "inventor_author.csv"}) {
        const std::string golden = golden_dir() + "/" + name;
        REQUIRE_MESSAGE(std::filesystem::exists(golden), "missing golden file " << golden);
        CHECK_MESSAGE(fixtures::read_file(p.out_dir + "/" + name) ==
                          fixtures::read_file(golden),
                      "golden mismatch for " << name);
    }
}

TEST_CASE("graph and text subcommands produce loadable outputs") {
    Pipeline p;
    const std::string flags = p.corpus_flags();

    // Find a planted SB id from the manifest to anchor graph commands.
    const std::string truth = fixtures::read_file(p.corpus_dir + "/ground_truth.jsonl");
    const auto pos = truth.find("\"pub_id\":\"sb");
    REQUIRE(pos != std::string::npos);
    const auto end = truth.find('"', pos + 10);
    const std::string sb_id = truth.substr(pos + 10, end - (pos + 10));

    REQUIRE(run("cocite " + flags + " --citers-of " + sb_id + " --threshold 1 --format " +
                    "edgelist --out " + p.out_dir,
                p.dir.file("g1.log")) == 0);
    REQUIRE(run("early-citers " + flags + " --sb " + sb_id + " --format dot --out " +
                    p.out_dir,
                p.dir.file("g2.log")) == 0);
    REQUIRE(run("bibcouple " + flags + " --early-citers-of " + sb_id +
                    " --format graphml --out " + p.out_dir,
                p.dir.file("g3.log")) == 0);
    REQUIRE(run("export-graph --input " + p.out_dir + "/cocitation.edgelist --format dot" +
                    " --out " + p.out_dir + " --out-file " + p.out_dir + "/converted.dot",
                p.dir.file("g4.log")) == 0);
    CHECK(fixtures::read_file(p.out_dir + "/converted.dot").rfind("graph G {", 0) == 0);

    REQUIRE(run("topic-timeline " + flags +
                    " --query \"wireless OR network*\" --from 1980 --to 2014 --out " +
                    p.out_dir,
                p.dir.file("t1.log")) == 0);
    REQUIRE(run("fit-growth --input " + p.out_dir + "/timeline.csv --out " + p.out_dir,
                p.dir.file("t2.log")) == 0);
    REQUIRE(run("concepts " + flags + " --query \"wireless OR network*\" --min-occ 3" +
                    " --format edgelist --out " + p.out_dir,
                p.dir.file("t3.log")) == 0);
    CHECK(std::filesystem::exists(p.out_dir + "/concept_clusters.csv"));
}
