// Command-line front end: graph ingestion, embedding, persistence export,
// clique-complex export, privacy attacks, report merging, and the synthetic
// benchmark harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rt4sc/attacks.hpp"
#include "rt4sc/bench.hpp"
#include "rt4sc/factorization.hpp"
#include "rt4sc/graph.hpp"
#include "rt4sc/metrics.hpp"
#include "rt4sc/persistence.hpp"
#include "rt4sc/pipeline.hpp"
#include "rt4sc/simplicial.hpp"
#include "rt4sc/text_features.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

std::vector<int> load_labels(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file: " + path);
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'id<TAB>label'");
    const int id = std::stoi(line.substr(0, tab));
    if (id < 0 || id >= n)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": id out of range");
    labels[static_cast<std::size_t>(id)] = std::stoi(line.substr(tab + 1));
  }
  return labels;
}

ordered_json attack_report_json(const std::string& attack, const std::string& family,
                                double auc_value, std::optional<double> prec,
                                std::optional<int> k, int n, std::uint64_t seed,
                                const std::vector<double>* loss_trace) {
  ordered_json j;
  j["attack"] = attack;
  j["representation_family"] = family;
  j["auc"] = auc_value;
  j["precision_at_k"] = prec ? ordered_json(*prec) : ordered_json(nullptr);
  if (k) j["k"] = *k;
  j["n"] = n;
  j["seed"] = seed;
  if (loss_trace && !loss_trace->empty()) j["loss_trace"] = *loss_trace;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text-attributed simplicial representations and privacy attacks"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir;
  app.add_option("--seed", seed, "base random seed")->capture_default_str();
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--out", out_dir, "output directory");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "normalize an edge list + docs file");
  std::string edges_path, docs_path;
  ingest->add_option("--edges", edges_path, "tab-separated edge list")->required();
  ingest->add_option("--docs", docs_path, "docs file (id<TAB>text)");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "factorize and write embeddings");
  int opt_k = -1, opt_t = -1, opt_iters = -1;
  double opt_lambda = -1.0, opt_tol = -1.0;
  bool opt_normalize = false;
  embed_cmd->add_option("--edges", edges_path, "edge list")->required();
  embed_cmd->add_option("--docs", docs_path, "docs file");
  embed_cmd->add_option("--k", opt_k, "latent dimension");
  embed_cmd->add_option("--t", opt_t, "text feature dimension");
  embed_cmd->add_option("--lambda", opt_lambda, "ridge coefficient");
  embed_cmd->add_option("--max-iters", opt_iters, "iteration budget");
  embed_cmd->add_option("--tol", opt_tol, "relative decrease stop threshold");
  embed_cmd->add_flag("--normalize", opt_normalize, "L2-normalize embedding rows");

  // lift
  auto* lift = app.add_subcommand("lift", "export the clique complex");
  lift->add_option("--edges", edges_path, "edge list")->required();

  // persist
  auto* persist = app.add_subcommand("persist", "ego-net persistence diagrams");
  int radius = 2, node = -1, threads = 1;
  persist->add_option("--edges", edges_path, "edge list")->required();
  persist->add_option("--radius", radius, "hop radius")->capture_default_str();
  persist->add_option("--node", node, "single node id (default: all nodes)");
  persist->add_option("--threads", threads, "worker threads")->capture_default_str();

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "run one attack on an embedding file");
  std::string embeddings_path, features_path, labels_path, attack_name;
  int decoder_steps = 400, cls_epochs = 300;
  double decoder_lr = 0.5, cls_lr = 0.5;
  attack_cmd->add_option("--embeddings", embeddings_path, "embeddings csv")->required();
  attack_cmd->add_option("--edges", edges_path, "ground-truth edge list")->required();
  attack_cmd->add_option("--attack", attack_name, "distance|decoder|membership")->required();
  attack_cmd->add_option("--features", features_path, "decoder node features csv (default identity)");
  attack_cmd->add_option("--labels", labels_path, "node labels (membership attack)");
  attack_cmd->add_option("--decoder-steps", decoder_steps, "")->capture_default_str();
  attack_cmd->add_option("--decoder-lr", decoder_lr, "")->capture_default_str();
  attack_cmd->add_option("--epochs", cls_epochs, "classifier epochs")->capture_default_str();
  attack_cmd->add_option("--lr", cls_lr, "classifier learning rate")->capture_default_str();

  // report
  auto* report_cmd = app.add_subcommand("report", "merge attack reports into a csv table");
  std::vector<std::string> report_inputs;
  report_cmd->add_option("--in", report_inputs, "attack/pipeline json files")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "planted-partition benchmark experiment");
  int bench_seeds = 10;
  std::vector<std::string> bench_overrides;
  bench_cmd->add_option("--seeds", bench_seeds, "number of seeds")->capture_default_str();
  bench_cmd->add_option("--set", bench_overrides,
                        "config override section.key=value (repeatable)");
  bench_cmd->add_option("--threads", threads, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    rt4sc::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = rt4sc::parse_config_file(config_path);
    cfg.seed = seed;

    const fs::path dir = ensure_out_dir(out_dir);

    if (*ingest) {
      rt4sc::LoadStats stats;
      const auto g = rt4sc::load_edge_list(edges_path, docs_path, &stats);
      if (stats.self_loops_dropped > 0)
        std::cerr << "warning: dropped " << stats.self_loops_dropped << " self-loop(s)\n";
      rt4sc::save_edge_list(g, (dir / "edges.tsv").string());
      rt4sc::save_docs(g, (dir / "docs.tsv").string());
      ordered_json j;
      j["n"] = g.n;
      j["edges"] = g.edges.size();
      j["self_loops_dropped"] = stats.self_loops_dropped;
      j["duplicate_edges_dropped"] = stats.duplicate_edges_dropped;
      write_file(dir / "ingest.json", j.dump(2) + "\n");
      std::cout << "ingested n=" << g.n << " edges=" << g.edges.size() << "\n";
    } else if (*embed_cmd) {
      const auto g = rt4sc::load_edge_list(edges_path, docs_path);
      if (opt_k > 0) cfg.fact.k = opt_k;
      if (opt_t > 0) cfg.text_t = opt_t;
      if (opt_lambda >= 0) cfg.fact.lambda = opt_lambda;
      if (opt_iters >= 0) cfg.fact.max_iters = opt_iters;
      if (opt_tol > 0) cfg.fact.tol = opt_tol;
      cfg.fact.seed = seed;

      const auto td = rt4sc::build_tfidf(g.docs);
      const auto tf = rt4sc::reduce_to_t(td, cfg.text_t, seed + 11);
      const auto m = rt4sc::affinity(rt4sc::transition_matrix(g));
      const auto model = rt4sc::factorize(m, tf.T, cfg.fact);
      const auto r = rt4sc::embed(model, tf.T, opt_normalize);
      rt4sc::save_model(model, (dir / "model.rt4sc").string());
      rt4sc::save_embeddings_csv(r, (dir / "embeddings.csv").string());
      std::cout << "embedded n=" << g.n << " dim=" << r.cols()
                << " objective=" << model.objective_trace.back() << "\n";
    } else if (*lift) {
      const auto g = rt4sc::load_edge_list(edges_path);
      const auto cx = rt4sc::clique_lift(g);
      rt4sc::save_complex(cx, (dir / "complex.txt").string());
      std::cout << "complex: " << cx.n << " vertices, " << cx.edges.size() << " edges, "
                << cx.triangles.size() << " triangles\n";
    } else if (*persist) {
      const auto g = rt4sc::load_edge_list(edges_path);
      if (node >= 0) {
        const auto ego = rt4sc::ego_subgraph(g, node, radius);
        const auto diagram =
            rt4sc::compute_persistence(rt4sc::build_filtration(ego.graph));
        rt4sc::save_diagram_csv(diagram,
                                (dir / ("diagram_" + std::to_string(node) + ".csv")).string());
        std::cout << "node " << node << ": " << diagram.bars.size() << " bars\n";
      } else {
        const rt4sc::Matrix topo = rt4sc::topo_features(g, radius, threads);
        std::ofstream out(dir / "topo_features.csv");
        out.precision(17);
        out << "count0,total0,max0,inf0,count1,total1,max1,inf1\n";
        for (Eigen::Index i = 0; i < topo.rows(); ++i) {
          for (Eigen::Index j = 0; j < topo.cols(); ++j) {
            if (j) out << ',';
            out << topo(i, j);
          }
          out << '\n';
        }
        std::cout << "wrote topo features for " << g.n << " nodes\n";
      }
    } else if (*attack_cmd) {
      const auto g = rt4sc::load_edge_list(edges_path);
      const rt4sc::Matrix r = rt4sc::load_embeddings_csv(embeddings_path);
      if (r.rows() != g.n)
        throw std::invalid_argument("embeddings rows do not match graph size");
      const auto pairs = rt4sc::candidate_pairs(g, seed + 71);
      std::vector<int> pair_labels;
      for (const auto& p : pairs) pair_labels.push_back(g.has_edge(p[0], p[1]) ? 1 : 0);
      const int true_edges =
          static_cast<int>(std::count(pair_labels.begin(), pair_labels.end(), 1));

      ordered_json j;
      if (attack_name == "distance") {
        const auto res = rt4sc::distance_edge_attack(r, pairs);
        const double a = rt4sc::auc(res.scores, pair_labels);
        std::optional<double> prec;
        std::optional<int> kk;
        if (true_edges > 0) {
          prec = rt4sc::precision_at_k(res.scores, pair_labels, true_edges);
          kk = true_edges;
        }
        j = attack_report_json("distance", "external", a, prec, kk, g.n, seed, nullptr);
      } else if (attack_name == "decoder") {
        rt4sc::Matrix x;
        if (features_path.empty()) {
          x = rt4sc::Matrix::Identity(g.n, g.n);
        } else {
          x = rt4sc::load_embeddings_csv(features_path);
          if (x.rows() != g.n)
            throw std::invalid_argument("features rows do not match graph size");
        }
        const auto st = rt4sc::decoder_gra(r, x, decoder_steps, decoder_lr, seed + 91);
        const rt4sc::Matrix scores = st.edge_scores();
        std::vector<double> s;
        for (const auto& p : pairs) s.push_back(scores(p[0], p[1]));
        const double a = rt4sc::auc(s, pair_labels);
        std::optional<double> prec;
        std::optional<int> kk;
        if (true_edges > 0) {
          prec = rt4sc::precision_at_k(s, pair_labels, true_edges);
          kk = true_edges;
        }
        j = attack_report_json("decoder", "external", a, prec, kk, g.n, seed,
                               &st.loss_trace);
      } else if (attack_name == "membership") {
        if (labels_path.empty())
          throw std::invalid_argument("membership attack requires --labels");
        const auto labels = load_labels(labels_path, g.n);
        std::vector<int> ids(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) ids[static_cast<std::size_t>(i)] = i;
        rt4sc::Rng rng(seed + 113);
        rng.shuffle(ids);
        const int q = g.n / 4;
        if (q < 1) throw std::invalid_argument("membership attack needs at least 4 nodes");
        std::vector<int> members(ids.begin(), ids.begin() + q);
        std::vector<int> nonmembers(ids.begin() + q, ids.begin() + 2 * q);
        rt4sc::ShadowSplit shadow;
        shadow.members.assign(ids.begin() + 2 * q, ids.begin() + 3 * q);
        shadow.nonmembers.assign(ids.begin() + 3 * q, ids.end());
        const auto target =
            rt4sc::train_softmax(r, labels, members, cls_epochs, cls_lr, seed + 127);
        const auto mr = rt4sc::membership_inference(target, r, labels, members, nonmembers,
                                                    shadow, cls_epochs, cls_lr, seed + 131);
        j = attack_report_json("membership", "external", mr.auc, std::nullopt, std::nullopt,
                               g.n, seed, nullptr);
        j["accuracy"] = mr.accuracy;
      } else {
        throw std::invalid_argument("unknown attack: " + attack_name);
      }
      write_file(dir / ("attack_" + attack_name + ".json"), j.dump(2) + "\n");
      std::cout << "attack " << attack_name << ": auc=" << j["auc"].dump() << "\n";
    } else if (*report_cmd) {
      std::string csv = "family,attack,auc,precision_at_k\n";
      auto append_row = [&csv](const ordered_json& row) {
        csv += row["representation_family"].get<std::string>() + "," +
               row["attack"].get<std::string>() + "," + row["auc"].dump() + "," +
               (row["precision_at_k"].is_null() ? "n/a" : row["precision_at_k"].dump()) +
               "\n";
      };
      for (const auto& path : report_inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open report: " + path);
        ordered_json j;
        in >> j;
        if (j.contains("rows")) {
          for (const auto& row : j["rows"]) append_row(row);
        } else if (j.contains("attack")) {
          append_row(j);
        } else {
          throw std::invalid_argument("unrecognized report file: " + path);
        }
      }
      write_file(dir / "report.csv", csv);
      std::cout << csv;
    } else if (*bench_cmd) {
      cfg.threads = threads;
      for (const auto& kv : bench_overrides) {
        const auto dot = kv.find('.');
        const auto eq = kv.find('=');
        if (dot == std::string::npos || eq == std::string::npos || dot > eq)
          throw std::invalid_argument("--set expects section.key=value: " + kv);
        rt4sc::apply_config_entry(cfg, kv.substr(0, dot), kv.substr(dot + 1, eq - dot - 1),
                                  kv.substr(eq + 1));
      }
      cfg.seed = seed;
      const auto summary = rt4sc::run_bench(cfg, bench_seeds);
      write_file(dir / "bench_report.json", rt4sc::bench_to_json(summary));
      const std::string table = rt4sc::bench_to_csv(summary);
      write_file(dir / "bench_table.csv", table);
      std::cout << table;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
