#include "rt4sc/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rt4sc/metrics.hpp"
#include "rt4sc/persistence.hpp"
#include "rt4sc/simplicial.hpp"
#include "rt4sc/text_features.hpp"

namespace rt4sc {

std::vector<std::array<int, 2>> candidate_pairs(const TextAttributedGraph& g,
                                                std::uint64_t seed) {
  std::vector<std::array<int, 2>> pairs;
  if (g.n <= 300) {
    for (int u = 0; u < g.n; ++u)
      for (int v = u + 1; v < g.n; ++v) pairs.push_back({u, v});
    return pairs;
  }

  pairs = g.edges;
  std::set<std::array<int, 2>> used(g.edges.begin(), g.edges.end());
  Rng rng(seed);
  std::size_t want = g.edges.size();
  const std::size_t all =
      static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.n - 1) / 2;
  want = std::min(want, all - g.edges.size());
  while (want > 0) {
    int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n)));
    if (u == v) continue;
    std::array<int, 2> e{std::min(u, v), std::max(u, v)};
    if (used.insert(e).second) {
      pairs.push_back(e);
      --want;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

[[noreturn]] void rethrow_tagged(const std::string& stage, const std::exception& e) {
  throw std::runtime_error(stage + ": " + e.what());
}

// Deterministic quarter split of the node set for membership inference:
// target members, target non-members, shadow members, shadow non-members.
struct MembershipSplit {
  std::vector<int> members, nonmembers;
  ShadowSplit shadow;
};

MembershipSplit quarter_split(int n, std::uint64_t seed) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
  Rng rng(seed);
  rng.shuffle(ids);

  MembershipSplit split;
  const int q = n / 4;
  if (q < 1) throw std::invalid_argument("membership attack needs at least 4 nodes");
  split.members.assign(ids.begin(), ids.begin() + q);
  split.nonmembers.assign(ids.begin() + q, ids.begin() + 2 * q);
  split.shadow.members.assign(ids.begin() + 2 * q, ids.begin() + 3 * q);
  split.shadow.nonmembers.assign(ids.begin() + 3 * q, ids.end());
  return split;
}

std::vector<int> edge_labels(const TextAttributedGraph& g,
                             const std::vector<std::array<int, 2>>& pairs) {
  std::vector<int> labels;
  labels.reserve(pairs.size());
  for (const auto& p : pairs) labels.push_back(g.has_edge(p[0], p[1]) ? 1 : 0);
  return labels;
}

}  // namespace

ComparisonReport run_pipeline(const ExperimentConfig& cfg) {
  if (cfg.families.empty() || cfg.attacks.empty())
    throw std::invalid_argument("config: select at least one family and one attack");
  for (const auto& f : cfg.families)
    if (f != "MF" && f != "MF+TOPO" && f != "SNN")
      throw std::invalid_argument("config: unknown family '" + f + "'");
  for (const auto& a : cfg.attacks)
    if (a != "distance" && a != "decoder" && a != "membership")
      throw std::invalid_argument("config: unknown attack '" + a + "'");

  // Input graph: files or the planted benchmark.
  TextAttributedGraph g;
  std::vector<int> labels;
  if (!cfg.edges_path.empty()) {
    g = load_edge_list(cfg.edges_path, cfg.docs_path);
    const bool wants_membership =
        std::find(cfg.attacks.begin(), cfg.attacks.end(), "membership") != cfg.attacks.end();
    if (wants_membership)
      throw std::invalid_argument(
          "config: the membership attack needs class labels; use the planted benchmark");
  } else {
    PlantedGraph pg = generate_planted(cfg.planted, cfg.seed);
    g = std::move(pg.graph);
    labels = std::move(pg.labels);
  }

  // Stage 1: text features and the factorization target.
  Matrix t_mat, m_mat;
  try {
    const TermDocMatrix td = build_tfidf(g.docs);
    t_mat = reduce_to_t(td, cfg.text_t, cfg.seed + 11).T;
    m_mat = affinity(transition_matrix(g));
  } catch (const std::exception& e) {
    rethrow_tagged("text-features", e);
  }

  FactorizationConfig fact = cfg.fact;
  fact.seed = cfg.seed + 23;
  Matrix mf;
  try {
    const FactorModel model = factorize(m_mat, t_mat, fact);
    mf = embed(model, t_mat);
  } catch (const std::exception& e) {
    rethrow_tagged("factorization", e);
  }

  Matrix mf_topo;
  try {
    mf_topo = augment(mf, g, cfg.persistence_radius, cfg.threads);
  } catch (const std::exception& e) {
    rethrow_tagged("persistence", e);
  }

  Matrix snn;
  try {
    const SimplicialComplex cx = clique_lift(g);
    const SNNWeights weights =
        SNNWeights::seeded(cfg.snn_layers, static_cast<int>(mf_topo.cols()), cfg.seed + 57);
    snn = snn_forward(cx, mf_topo, weights);
  } catch (const std::exception& e) {
    rethrow_tagged("simplicial", e);
  }

  const auto pairs = candidate_pairs(g, cfg.seed + 71);
  const auto pair_labels = edge_labels(g, pairs);
  const int true_edges =
      static_cast<int>(std::count(pair_labels.begin(), pair_labels.end(), 1));

  ComparisonReport report;
  report.seed = cfg.seed;
  report.n = g.n;

  for (const auto& family : cfg.families) {
    const Matrix& rep = family == "MF" ? mf : family == "MF+TOPO" ? mf_topo : snn;
    for (const auto& attack : cfg.attacks) {
      ReportRow row;
      row.family = family;
      row.attack = attack;
      try {
        if (attack == "distance") {
          const EdgeAttackResult res = distance_edge_attack(rep, pairs);
          row.auc = auc(res.scores, pair_labels);
          if (true_edges > 0) {
            row.k = true_edges;
            row.precision_at_k = precision_at_k(res.scores, pair_labels, true_edges);
          }
        } else if (attack == "decoder") {
          // Known-X adversary uses the public text features; otherwise the
          // features degrade to one-hot identity.
          const Matrix x = cfg.decoder_known_x
                               ? Matrix(t_mat.transpose())
                               : Matrix(Matrix::Identity(g.n, g.n));
          const DecoderState st =
              decoder_gra(rep, x, cfg.decoder_steps, cfg.decoder_lr, cfg.seed + 91);
          const Matrix scores = st.edge_scores();
          std::vector<double> s;
          s.reserve(pairs.size());
          for (const auto& p : pairs) s.push_back(scores(p[0], p[1]));
          row.auc = auc(s, pair_labels);
          if (true_edges > 0) {
            row.k = true_edges;
            row.precision_at_k = precision_at_k(s, pair_labels, true_edges);
          }
          row.loss_trace = st.loss_trace;
        } else {  // membership
          const MembershipSplit split = quarter_split(g.n, cfg.seed + 113);
          const SoftmaxClassifier target = train_softmax(
              rep, labels, split.members, cfg.classifier_epochs, cfg.classifier_lr,
              cfg.seed + 127);
          const MembershipReport mr = membership_inference(
              target, rep, labels, split.members, split.nonmembers, split.shadow,
              cfg.classifier_epochs, cfg.classifier_lr, cfg.seed + 131);
          row.auc = mr.auc;
          row.accuracy = mr.accuracy;
        }
      } catch (const std::exception& e) {
        rethrow_tagged("attacks[" + attack + "/" + family + "]", e);
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

namespace {

nlohmann::ordered_json row_to_json(const ReportRow& row, std::uint64_t seed, int n) {
  nlohmann::ordered_json j;
  j["attack"] = row.attack;
  j["representation_family"] = row.family;
  j["auc"] = row.auc;
  if (row.precision_at_k) {
    j["precision_at_k"] = *row.precision_at_k;
    j["k"] = *row.k;
  } else {
    j["precision_at_k"] = nullptr;
  }
  j["n"] = n;
  j["seed"] = seed;
  if (row.accuracy) j["accuracy"] = *row.accuracy;
  if (!row.loss_trace.empty()) j["loss_trace"] = row.loss_trace;
  return j;
}

nlohmann::ordered_json report_json(const ComparisonReport& report) {
  nlohmann::ordered_json j;
  j["version"] = report.version;
  j["seed"] = report.seed;
  j["n"] = report.n;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) j["rows"].push_back(row_to_json(row, report.seed, report.n));
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string report_to_json(const ComparisonReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string report_to_csv(const ComparisonReport& report) {
  std::string csv = "family,attack,auc,precision_at_k\n";
  for (const auto& row : report.rows) {
    csv += row.family + "," + row.attack + "," + format_double(row.auc) + ",";
    csv += row.precision_at_k ? format_double(*row.precision_at_k) : std::string("n/a");
    csv += "\n";
  }
  return csv;
}

BenchSummary run_bench(const ExperimentConfig& cfg, int num_seeds) {
  if (num_seeds < 1) throw std::invalid_argument("bench: num_seeds must be >= 1");
  BenchSummary summary;
  summary.base_seed = cfg.seed;
  summary.num_seeds = num_seeds;
  for (int s = 0; s < num_seeds; ++s) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(s);
    summary.runs.push_back(run_pipeline(run_cfg));
  }
  return summary;
}

namespace {

struct CellStats {
  double auc_mean = 0.0, auc_std = 0.0;
  double prec_mean = 0.0, prec_std = 0.0;
  bool has_prec = false;
};

CellStats cell_stats(const BenchSummary& summary, const std::string& family,
                     const std::string& attack) {
  std::vector<double> aucs, precs;
  for (const auto& run : summary.runs) {
    for (const auto& row : run.rows) {
      if (row.family != family || row.attack != attack) continue;
      aucs.push_back(row.auc);
      if (row.precision_at_k) precs.push_back(*row.precision_at_k);
    }
  }
  auto mean_std = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (const double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return std::pair<double, double>(mean, std::sqrt(var));
  };
  CellStats st;
  std::tie(st.auc_mean, st.auc_std) = mean_std(aucs);
  if (!precs.empty()) {
    st.has_prec = true;
    std::tie(st.prec_mean, st.prec_std) = mean_std(precs);
  }
  return st;
}

}  // namespace

std::string bench_to_json(const BenchSummary& summary) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["base_seed"] = summary.base_seed;
  j["num_seeds"] = summary.num_seeds;
  j["runs"] = nlohmann::ordered_json::array();
  for (const auto& run : summary.runs) j["runs"].push_back(report_json(run));

  j["aggregate"] = nlohmann::ordered_json::array();
  if (!summary.runs.empty()) {
    for (const auto& row : summary.runs.front().rows) {
      const CellStats st = cell_stats(summary, row.family, row.attack);
      nlohmann::ordered_json cell;
      cell["representation_family"] = row.family;
      cell["attack"] = row.attack;
      cell["auc_mean"] = st.auc_mean;
      cell["auc_std"] = st.auc_std;
      if (st.has_prec) {
        cell["precision_at_k_mean"] = st.prec_mean;
        cell["precision_at_k_std"] = st.prec_std;
      }
      j["aggregate"].push_back(cell);
    }
  }
  return j.dump(2) + "\n";
}

std::string bench_to_csv(const BenchSummary& summary) {
  std::string csv = "family,attack,auc_mean,auc_std,precision_at_k_mean,precision_at_k_std\n";
  if (summary.runs.empty()) return csv;
  for (const auto& row : summary.runs.front().rows) {
    const CellStats st = cell_stats(summary, row.family, row.attack);
    csv += row.family + "," + row.attack + "," + format_double(st.auc_mean) + "," +
           format_double(st.auc_std) + ",";
    if (st.has_prec) {
      csv += format_double(st.prec_mean) + "," + format_double(st.prec_std);
    } else {
      csv += "n/a,n/a";
    }
    csv += "\n";
  }
  return csv;
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream ss(value);
  T out;
  ss >> out;
  if (ss.fail() || !ss.eof())
    throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (const char c : value) {
    if (c == ',') {
      if (!cur.empty()) items.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) items.push_back(cur);
  return items;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& section,
                        const std::string& key, const std::string& value) {
  const std::string where = section + "." + key;
  if (section == "graph-core") {
    if (key == "edges") cfg.edges_path = value;
    else if (key == "docs") cfg.docs_path = value;
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "text-features") {
    if (key == "t") cfg.text_t = parse_number<int>(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "factorization") {
    if (key == "k") cfg.fact.k = parse_number<int>(where, value);
    else if (key == "lambda") cfg.fact.lambda = parse_number<double>(where, value);
    else if (key == "max_iters") cfg.fact.max_iters = parse_number<int>(where, value);
    else if (key == "tol") cfg.fact.tol = parse_number<double>(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "simplicial") {
    if (key == "layers") cfg.snn_layers = parse_number<int>(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "persistence") {
    if (key == "radius") cfg.persistence_radius = parse_number<int>(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "attacks") {
    if (key == "decoder_steps") cfg.decoder_steps = parse_number<int>(where, value);
    else if (key == "decoder_lr") cfg.decoder_lr = parse_number<double>(where, value);
    else if (key == "decoder_features") {
      if (value == "text") cfg.decoder_known_x = true;
      else if (value == "identity") cfg.decoder_known_x = false;
      else throw std::invalid_argument("config: " + where + " must be text or identity");
    }
    else if (key == "classifier_epochs") cfg.classifier_epochs = parse_number<int>(where, value);
    else if (key == "classifier_lr") cfg.classifier_lr = parse_number<double>(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else if (section == "eval-cli") {
    if (key == "families") cfg.families = split_list(value);
    else if (key == "attacks") cfg.attacks = split_list(value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(where, value);
    else if (key == "threads") cfg.threads = parse_number<int>(where, value);
    else if (key == "n") cfg.planted.n = parse_number<int>(where, value);
    else if (key == "communities") cfg.planted.communities = parse_number<int>(where, value);
    else if (key == "p_in") cfg.planted.p_in = parse_number<double>(where, value);
    else if (key == "p_out") cfg.planted.p_out = parse_number<double>(where, value);
    else if (key == "vocab_per_community")
      cfg.planted.vocab_per_community = parse_number<int>(where, value);
    else if (key == "shared_vocab") cfg.planted.shared_vocab = parse_number<int>(where, value);
    else if (key == "doc_len") cfg.planted.doc_len = parse_number<int>(where, value);
    else if (key == "noise_fraction")
      cfg.planted.noise_fraction = parse_number<double>(where, value);
    else throw std::invalid_argument("config: unknown key " + where);
  } else {
    throw std::invalid_argument("config: unknown section [" + section + "]");
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);

  ExperimentConfig cfg;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config: " + path + ":" + std::to_string(line_no) +
                                  ": key outside any [section]");
    apply_config_entry(cfg, section, key, value);
  }
  return cfg;
}

}  // namespace rt4sc
