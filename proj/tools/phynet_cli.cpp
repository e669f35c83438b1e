// phynet: counting, asymptotics and random generation of level-1/2
// phylogenetic networks.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phynet/asymptotics.hpp"
#include "phynet/classes.hpp"
#include "phynet/oracle.hpp"
#include "phynet/sampler.hpp"

namespace fs = std::filesystem;
using namespace phynet;
using json = nlohmann::json;

namespace {

NetworkClass parse_class(const std::string& name) {
  auto cls = class_from_name(name);
  if (!cls)
    throw std::invalid_argument("--class: expected one of unrooted1|rooted1|unrooted2|rooted2");
  return *cls;
}

void write_out(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << text;
}

std::string real6(const Real& v) { return v.str(6); }

// '#' is an internal convention; gallery and sample output use plain labels
Network publish_labels(const Network& net, int leaves) {
  if (net.kind == Kind::Rooted) return net;
  return relabel(net, {{"#", std::to_string(leaves)}});
}

int run_gallery(const std::string& dir) {
  fs::create_directories(dir);
  struct Item {
    NetworkClass cls;
    int leaves;
  };
  const std::vector<Item> items = {{NetworkClass::UnrootedLevel1, 4},
                                   {NetworkClass::RootedLevel1, 2},
                                   {NetworkClass::UnrootedLevel2, 3},
                                   {NetworkClass::RootedLevel2, 2}};
  int total = 0;
  for (const Item& item : items) {
    int n = item.leaves - leaf_offset(item.cls);
    std::vector<Network> nets = generate_all(item.cls, n);
    std::vector<std::pair<std::string, Network>> sorted;
    for (const Network& net : nets) sorted.push_back({canonical_form(net), net});
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int idx = 0;
    for (const auto& [form, net] : sorted) {
      char name[128];
      std::snprintf(name, sizeof(name), "%s_%dleaves_%03d.dot",
                    std::string(class_name(item.cls)).c_str(), item.leaves, idx++);
      std::ofstream f(fs::path(dir) / name);
      f << to_dot(publish_labels(net, item.leaves));
      total++;
    }
    std::cout << class_name(item.cls) << ": " << nets.size() << " networks on "
              << item.leaves << " leaves\n";
  }
  std::cout << "wrote " << total << " DOT files to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact enumeration, asymptotics and uniform random generation of "
               "level-1 and level-2 phylogenetic networks"};
  app.require_subcommand(1);

  std::string cls_name = "rooted1", format, out, parameter = "blobs";
  int leaves = 1, precision_bits = 256, count_n = 1, leaves_max = 6;
  std::uint64_t seed = 0;
  int v_rooted1 = 4, v_unrooted1 = 5, v_rooted2 = 3, v_unrooted2 = 4;
  bool allow_big = false;

  auto* c_count = app.add_subcommand("count", "exact number of networks with n leaves");
  c_count->add_option("--class", cls_name)->required();
  c_count->add_option("--n", leaves, "number of leaves")->required();

  auto* c_table = app.add_subcommand("table", "counts for all classes up to a leaf bound");
  c_table->add_option("--leaves-max,--order", leaves_max);
  c_table->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  c_table->add_option("--out", out);

  auto* c_refined = app.add_subcommand("refined", "counts refined by (k, m)");
  c_refined->add_option("--class", cls_name)->required();
  c_refined->add_option("--n", leaves, "number of leaves")->required();
  c_refined->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  c_refined->add_option("--out", out);

  auto* c_asym = app.add_subcommand("asym", "asymptotic constants of a class");
  c_asym->add_option("--class", cls_name)->required();
  c_asym->add_option("--precision-bits", precision_bits)->check(CLI::Range(64, 8192));
  c_asym->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* c_mom = app.add_subcommand("moments", "limit law moments of a parameter");
  c_mom->add_option("--class", cls_name)->required();
  c_mom->add_option("--parameter", parameter)->check(CLI::IsMember({"blobs", "edges"}));
  c_mom->add_option("--precision-bits", precision_bits)->check(CLI::Range(64, 8192));
  c_mom->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* c_sample = app.add_subcommand("sample", "uniform random networks");
  c_sample->add_option("--class", cls_name)->required();
  c_sample->add_option("--n", leaves, "number of leaves")->required();
  c_sample->add_option("--count", count_n);
  c_sample->add_option("--seed", seed);
  c_sample->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  c_sample->add_option("--out", out, "directory for DOT output");

  auto* c_gallery = app.add_subcommand("gallery", "small complete galleries as DOT files");
  c_gallery->add_option("--out", out);

  auto* c_verify = app.add_subcommand("verify", "exhaustive cross-check of all counts");
  c_verify->add_option("--rooted1", v_rooted1);
  c_verify->add_option("--unrooted1", v_unrooted1, "maximum number of leaves");
  c_verify->add_option("--rooted2", v_rooted2);
  c_verify->add_option("--unrooted2", v_unrooted2, "maximum number of leaves");
  c_verify->add_flag("--allow-big", allow_big, "permit rooted2 n=4 (120078 networks)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*c_count) {
      NetworkClass cls = parse_class(cls_name);
      std::cout << count_by_leaves(cls, leaves).str() << "\n";
      return 0;
    }
    if (*c_table) {
      std::vector<CountRecord> recs = table_records(leaves_max);
      write_out(format == "json" ? counts_json(recs) : counts_csv(recs), out);
      return 0;
    }
    if (*c_refined) {
      NetworkClass cls = parse_class(cls_name);
      int n = leaves - leaf_offset(cls);
      if (n < 1) throw std::invalid_argument("no series index for that leaf count");
      RefinedCountTable t = refined_counts(cls, n);
      write_out(format == "json" ? refined_json(t) : refined_csv(t), out);
      return 0;
    }
    if (*c_asym) {
      AsymptoticReport r = asymptotic_constants(parse_class(cls_name), precision_bits);
      if (format == "json") {
        std::cout << to_json(r) << "\n";
      } else {
        std::cout << "class=" << class_name(r.cls) << " tau=" << real6(r.tau)
                  << " rho=" << real6(r.rho) << " c1=" << real6(r.c1)
                  << " c2=" << real6(r.c2) << "\n";
      }
      return 0;
    }
    if (*c_mom) {
      Parameter p = parameter == "blobs" ? Parameter::BlobCount : Parameter::InnerEdgeCount;
      MomentReport r = drmota_moments(parse_class(cls_name), p, precision_bits);
      if (format == "json") {
        std::cout << to_json(r) << "\n";
      } else {
        std::cout << "class=" << class_name(r.cls) << " parameter=" << parameter
                  << " z0=" << real6(r.z0) << " C0=" << real6(r.C0)
                  << " mu=" << real6(r.mu) << " sigma2=" << real6(r.sigma2) << "\n";
      }
      return 0;
    }
    if (*c_sample) {
      NetworkClass cls = parse_class(cls_name);
      int n = leaves - leaf_offset(cls);
      if (n < 1) throw std::invalid_argument("no networks with that leaf count");
      WeightTable table = preprocess(cls, n);
      if (!out.empty()) fs::create_directories(out);
      for (int i = 0; i < count_n; ++i) {
        Network net = publish_labels(sample(table, n, seed + i), leaves);
        if (format == "json") {
          std::cout << network_json(net) << "\n";
        } else if (!out.empty()) {
          char name[160];
          std::snprintf(name, sizeof(name), "sample_%s_%dleaves_seed%llu.dot",
                        std::string(class_name(cls)).c_str(), leaves,
                        static_cast<unsigned long long>(seed + i));
          std::ofstream f(fs::path(out) / name);
          f << to_dot(net);
        } else {
          std::cout << to_dot(net);
        }
      }
      return 0;
    }
    if (*c_gallery) return run_gallery(out.empty() ? "gallery" : out);
    if (*c_verify) {
      OracleOptions opts;
      opts.allow_big = allow_big;
      bool ok = true;
      json reports = json::array();
      struct Job {
        NetworkClass cls;
        int n_max;
      };
      std::vector<Job> jobs = {{NetworkClass::RootedLevel1, v_rooted1},
                               {NetworkClass::UnrootedLevel1, v_unrooted1 - 1},
                               {NetworkClass::RootedLevel2, v_rooted2},
                               {NetworkClass::UnrootedLevel2, v_unrooted2 - 1}};
      for (const Job& job : jobs) {
        VerifyReport r = verify_counts(job.cls, job.n_max, opts);
        ok = ok && r.ok;
        reports.push_back(json::parse(to_json(r)));
        std::cerr << class_name(job.cls) << " up to n=" << job.n_max << ": "
                  << (r.ok ? "ok" : "MISMATCH") << "\n";
      }
      std::cout << json{{"schema", "phynet.verify-run/1"}, {"ok", ok}, {"reports", reports}}
                       .dump(2)
                << "\n";
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
