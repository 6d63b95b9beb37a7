#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stdout captured and stderr dropped (stderr carries
// timings, which are nondeterministic by design).
RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("hetfs_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    fs::path out_file = dir / ("out" + std::to_string(counter++));
    std::string command = std::string(HETFS_CLI_PATH) + " " + args + " >" + out_file.string() +
                          " 2>/dev/null";
    if (!stdin_text.empty()) {
        fs::path in_file = dir / "stdin";
        std::ofstream in(in_file);
        in << stdin_text;
        in.close();
        command += " <" + in_file.string();
    }
    RunResult result;
    int status = std::system(command.c_str());
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    result.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// One G1 workspace per suite run.
struct Workspace {
    fs::path dir;

    Workspace() {
        dir = fs::temp_directory_path() / ("hetfs_ws_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir / "g1");
        write(dir / "g1/schema.json", R"({"node_types": ["M", "A", "D"],
            "relations": [{"name": "MA", "src": "M", "dst": "A"},
                          {"name": "MD", "src": "M", "dst": "D"}]})");
        write(dir / "g1/nodes.tsv", "id\ttype\nm1\tM\nm2\tM\nm3\tM\na1\tA\na2\tA\nd1\tD\n");
        write(dir / "g1/edges.tsv",
              "src\tdst\trelation\nm1\ta1\tMA\nm2\ta1\tMA\nm2\ta2\tMA\nm3\ta2\tMA\n"
              "m1\td1\tMD\nm2\td1\tMD\n");
        write(dir / "g1/text.tsv",
              "id\tfield\ttext\nm1\ttitle\tterminator future\nm2\ttitle\tterminator\n"
              "m3\ttitle\tship\n");
        write(dir / "g1.conf", "schema=" + (dir / "g1/schema.json").string() +
                                   "\nnodes=" + (dir / "g1/nodes.tsv").string() +
                                   "\nedges=" + (dir / "g1/edges.tsv").string() +
                                   "\ntext=" + (dir / "g1/text.tsv").string() +
                                   "\nworkdir=" + (dir / "work").string() + "\n");
    }

    static void write(const fs::path& p, const std::string& body) {
        std::ofstream out(p);
        out << body;
    }

    std::string conf() const { return "--config " + (dir / "g1.conf").string(); }
};

Workspace& ws() {
    static Workspace instance;
    return instance;
}

}  // namespace

TEST_CASE("ingest prints per-type and per-relation counts") {
    RunResult r = run_cli("ingest " + ws().conf());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("nodes: M=3 A=2 D=1; edges: MA=4 MD=2") != std::string::npos);
}

TEST_CASE("re-running ingest reproduces the snapshot byte for byte") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    std::string first = slurp(ws().dir / "work/graph.bin");
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    CHECK(slurp(ws().dir / "work/graph.bin") == first);
}

TEST_CASE("ingest fails loudly on a missing file") {
    Workspace::write(ws().dir / "bad.conf",
                     "schema=" + (ws().dir / "g1/schema.json").string() +
                         "\nnodes=" + (ws().dir / "g1/nodes.tsv").string() +
                         "\nedges=" + (ws().dir / "missing.tsv").string() +
                         "\nworkdir=" + (ws().dir / "work2").string() + "\n");
    CHECK(run_cli("ingest --config " + (ws().dir / "bad.conf").string()).exit_code != 0);
}

TEST_CASE("precompute writes tables and changing c_n only moves alpha") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);
    std::string alpha1 = slurp(ws().dir / "work/alpha.tsv");
    std::string contrib1 = slurp(ws().dir / "work/contrib.tsv");
    std::string chi1 = slurp(ws().dir / "work/chi.tsv");
    CHECK(contrib1.find("MA\t") != std::string::npos);

    REQUIRE(run_cli("precompute " + ws().conf() + " --c-n 0.5").exit_code == 0);
    CHECK(slurp(ws().dir / "work/alpha.tsv") != alpha1);
    CHECK(slurp(ws().dir / "work/contrib.tsv") == contrib1);
    CHECK(slurp(ws().dir / "work/chi.tsv") == chi1);

    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);  // restore
}

TEST_CASE("query ranks m2 first and free mode matches the explicit set") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);

    RunResult mp = run_cli("query m1 --mp MAM,MDM -k 5 " + ws().conf());
    REQUIRE(mp.exit_code == 0);
    CHECK(mp.out.find("rank\tnode_id\tscore\n1\tm2\t") != std::string::npos);

    RunResult free_q = run_cli("query m1 --free 2 -k 5 " + ws().conf());
    REQUIRE(free_q.exit_code == 0);
    CHECK(free_q.out == mp.out);

    RunResult unknown = run_cli("query zzz --mp MAM " + ws().conf());
    CHECK(unknown.exit_code != 0);
}

TEST_CASE("query output is deterministic, including Monte-Carlo") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);
    for (const char* args : {"query m1 --mp MAM,MDM -k 5 --json ",
                             "query m1 --free 2 -k 5 --engine mc --walks 20000 --seed 9 ",
                             "query m1 --mp MAM --engine pathsim ",
                             "query m1 --mp MAM --engine simrank "}) {
        RunResult a = run_cli(std::string(args) + ws().conf());
        RunResult b = run_cli(std::string(args) + ws().conf());
        REQUIRE(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("pairwise content mode works after a snapshot round-trip") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);
    // The tf-idf vectors ride a binary sidecar; the Monte-Carlo engine
    // must be able to use them after reload.
    RunResult mc = run_cli("query m1 --mp MAM --engine mc --walks 20000 --seed 3 "
                           "--content-mode pair " +
                           ws().conf());
    REQUIRE(mc.exit_code == 0);
    CHECK(mc.out.find("m2") != std::string::npos);
    // The factorized engine rejects the mode.
    RunResult exact = run_cli("query m1 --mp MAM --content-mode pair " + ws().conf());
    CHECK(exact.exit_code != 0);
}

TEST_CASE("ablation flags change scores without breaking ranking output") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);
    RunResult full = run_cli("query m1 --mp MAM -k 5 " + ws().conf());
    RunResult bare = run_cli(
        "query m1 --mp MAM -k 5 --ablate node --ablate semantics --ablate content " + ws().conf());
    REQUIRE(bare.exit_code == 0);
    CHECK(bare.out != full.out);
    // With everything ablated the MAM score is c / beta(a1)^2 = 0.8 / 4.
    CHECK(bare.out.find("1\tm2\t0.2\n") != std::string::npos);
}

TEST_CASE("repl runs multiple queries and survives bad input") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);
    RunResult r = run_cli("repl " + ws().conf(),
                          "m1 MAM\n\\k 3\nm1 MDM\nnope MAM\nm1 QQQ\n\\quit\n");
    REQUIRE(r.exit_code == 0);
    // Two ranked tables, then two inline errors.
    CHECK(r.out.find("rank\tnode_id\tscore") != std::string::npos);
    CHECK(r.out.find("error: UnknownNode") != std::string::npos);
    CHECK(r.out.find("error: ParseError") != std::string::npos);
    std::size_t tables = 0;
    for (std::size_t pos = 0; (pos = r.out.find("rank\tnode_id", pos)) != std::string::npos; ++pos)
        ++tables;
    CHECK(tables == 2);
}

TEST_CASE("precompute warns when a relation touches every node") {
    fs::path dir = ws().dir / "covered";
    fs::create_directories(dir);
    Workspace::write(dir / "schema.json",
                     R"({"node_types": ["X", "Y"],
                         "relations": [{"name": "XY", "src": "X", "dst": "Y"}]})");
    Workspace::write(dir / "nodes.tsv", "id\ttype\nx1\tX\nx2\tX\ny1\tY\ny2\tY\n");
    Workspace::write(dir / "edges.tsv", "src\tdst\trelation\nx1\ty1\tXY\nx2\ty2\tXY\n");
    Workspace::write(dir / "covered.conf", "schema=" + (dir / "schema.json").string() +
                                               "\nnodes=" + (dir / "nodes.tsv").string() +
                                               "\nedges=" + (dir / "edges.tsv").string() +
                                               "\nworkdir=" + (dir / "work").string() + "\n");
    REQUIRE(run_cli("ingest --config " + (dir / "covered.conf").string()).exit_code == 0);

    fs::path err_file = dir / "stderr.txt";
    std::string cmd = std::string(HETFS_CLI_PATH) + " precompute --config " +
                      (dir / "covered.conf").string() + " >/dev/null 2>" + err_file.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(err_file).find("mu=0 for relation XY") != std::string::npos);
}

TEST_CASE("repl k directive bounds the table size") {
    fs::path dir = ws().dir / "dense";
    // The extra Z type keeps MA from touching every node (mu would be 0).
    std::string synth = "synth --out " + dir.string() +
                        " --types M:30,A:12,Z:5 --rel MA:M:A:150 --rel MZ:M:Z:10 --seed 2";
    REQUIRE(run_cli(synth).exit_code == 0);
    Workspace::write(ws().dir / "dense.conf",
                     "schema=" + (dir / "schema.json").string() +
                         "\nnodes=" + (dir / "nodes.tsv").string() +
                         "\nedges=" + (dir / "edges.tsv").string() +
                         "\nworkdir=" + (ws().dir / "dense_work").string() + "\n");
    std::string conf = "--config " + (ws().dir / "dense.conf").string();
    REQUIRE(run_cli("ingest " + conf).exit_code == 0);
    REQUIRE(run_cli("precompute " + conf).exit_code == 0);
    RunResult r = run_cli("repl " + conf, "\\k 3\nM0 MAM\n\\quit\n");
    REQUIRE(r.exit_code == 0);
    std::size_t rows = 0;
    for (std::size_t pos = 0; (pos = r.out.find('\n', pos)) != std::string::npos; ++pos) ++rows;
    CHECK(rows == 4);  // header + exactly k rows
}

TEST_CASE("synth output is reproducible from the command line") {
    std::string out1 = (ws().dir / "synth1").string();
    std::string out2 = (ws().dir / "synth2").string();
    std::string args = "--types X:20,Y:10 --rel XY:X:Y:40 --skew 0.5 --seed 12";
    REQUIRE(run_cli("synth --out " + out1 + " " + args).exit_code == 0);
    REQUIRE(run_cli("synth --out " + out2 + " " + args).exit_code == 0);
    CHECK(slurp(out1 + "/edges.tsv") == slurp(out2 + "/edges.tsv"));
    CHECK(!slurp(out1 + "/edges.tsv").empty());
}

TEST_CASE("contribution exports DOT with overridable weights") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    RunResult dot = run_cli("contribution " + ws().conf());
    REQUIRE(dot.exit_code == 0);
    CHECK(dot.out.find("M -> A [label=\"0.12\"]") != std::string::npos);
    RunResult forced = run_cli("contribution --override MD=0.5 " + ws().conf());
    CHECK(forced.out.find("M -> D [label=\"0.50\"]") != std::string::npos);
}

TEST_CASE("eval cluster recovers a planted partition") {
    fs::path dir = ws().dir / "planted";
    fs::create_directories(dir);
    // Two blocks of items over block-local hubs plus two idle hubs.
    std::string nodes = "id\ttype\n";
    std::string edges = "src\tdst\trelation\n";
    std::string labels = "id\tlabel\n";
    for (int i = 0; i < 40; ++i) {
        nodes += "x" + std::to_string(i) + "\tX\n";
        labels += "x" + std::to_string(i) + "\t" + (i < 20 ? "red" : "blue") + "\n";
        for (int l = 0; l < 3; ++l) {
            int hub = (i < 20 ? 0 : 5) + (i * 7 + l * 3) % 5;
            edges += "x" + std::to_string(i) + "\th" + std::to_string(hub) + "\tXH\n";
        }
    }
    for (int h = 0; h < 12; ++h) nodes += "h" + std::to_string(h) + "\tH\n";
    Workspace::write(dir / "schema.json",
                     R"({"node_types": ["X", "H"],
                         "relations": [{"name": "XH", "src": "X", "dst": "H"}]})");
    Workspace::write(dir / "nodes.tsv", nodes);
    Workspace::write(dir / "edges.tsv", edges);
    Workspace::write(dir / "labels.tsv", labels);
    Workspace::write(dir / "planted.conf", "schema=" + (dir / "schema.json").string() +
                                               "\nnodes=" + (dir / "nodes.tsv").string() +
                                               "\nedges=" + (dir / "edges.tsv").string() +
                                               "\nlabels=" + (dir / "labels.tsv").string() +
                                               "\nworkdir=" + (dir / "work").string() + "\n");

    RunResult r = run_cli("eval --task cluster --config " + (dir / "planted.conf").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"nmi\": 1.0") != std::string::npos);

    RunResult c = run_cli("eval --task classify --config " + (dir / "planted.conf").string());
    REQUIRE(c.exit_code == 0);
    CHECK(c.out.find("\"micro_f1\": 1.0") != std::string::npos);

    RunResult bad = run_cli("eval --task nonsense --config " + (dir / "planted.conf").string());
    CHECK(bad.exit_code != 0);
}

TEST_CASE("environment variables override the config file") {
    REQUIRE(run_cli("ingest " + ws().conf()).exit_code == 0);
    REQUIRE(run_cli("precompute " + ws().conf()).exit_code == 0);
    RunResult normal = run_cli("query m1 --mp MAM,MDM " + ws().conf());
    CHECK(normal.out.find("m2") != std::string::npos);
    ::setenv("HETFS_EPSILON", "0.9", 1);
    RunResult filtered = run_cli("query m1 --mp MAM,MDM " + ws().conf());
    ::unsetenv("HETFS_EPSILON");
    REQUIRE(filtered.exit_code == 0);
    CHECK(filtered.out.find("m2") == std::string::npos);  // everything cut off

    ::setenv("HETFS_ENGINE", "bogus", 1);
    RunResult bad = run_cli("query m1 --mp MAM " + ws().conf());
    ::unsetenv("HETFS_ENGINE");
    CHECK(bad.exit_code != 0);
}
