// courtnet: command-line driver for the judgment pipeline.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "courtnet/pipeline.hpp"

namespace {

using courtnet::PipelineConfig;

struct Overrides {
  std::string config_path;
  PipelineConfig values;
  std::vector<std::pair<CLI::Option*, std::function<void(PipelineConfig&)>>> setters;

  template <typename T>
  void add(CLI::App* app, const std::string& flag, T PipelineConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_option(flag, values.*field, help);
    setters.emplace_back(opt, [this, field](PipelineConfig& c) { c.*field = values.*field; });
  }

  PipelineConfig resolve() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : courtnet::load_config(config_path);
    for (const auto& [opt, set] : setters)
      if (opt->count() > 0) set(c);
    return c;
  }
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "JSON configuration file");
  o.add(app, "--input", &PipelineConfig::input_dir, "Directory of judgment files");
  o.add(app, "--output", &PipelineConfig::output_dir, "Directory for stage files");
  o.add(app, "--profile", &PipelineConfig::profile, "Keyword profile name, or auto");
  o.add(app, "--a", &PipelineConfig::a, "Weight of an appellant-side win");
  o.add(app, "--b", &PipelineConfig::b, "Weight of an appellee-side win");
  o.add(app, "--k", &PipelineConfig::k, "Shared articles needed for a case edge");
  o.add(app, "--min-cases", &PipelineConfig::min_cases, "Minimum judgments per opposing-network lawyer");
  o.add(app, "--collab-min", &PipelineConfig::collab_min, "Minimum collaborations per collaboration edge");
  o.add(app, "--damping", &PipelineConfig::damping, "PageRank damping factor");
  o.add(app, "--tol", &PipelineConfig::tol, "PageRank L1 tolerance");
  o.add(app, "--max-iter", &PipelineConfig::max_iter, "PageRank iteration cap");
  o.add(app, "--jaro-threshold", &PipelineConfig::jaro_threshold, "Fuzzy marker and node threshold");
  o.add(app, "--rank-by", &PipelineConfig::rank_by, "pagerank, win_rate or experience");
  o.add(app, "--workers", &PipelineConfig::workers, "Worker threads (0: hardware)");
  o.add(app, "--seed", &PipelineConfig::seed, "Synthetic corpus seed");
  o.add(app, "--n-docs", &PipelineConfig::n_docs, "Synthetic corpus size");
  o.add(app, "--mix", &PipelineConfig::mix, "Synthetic jurisdiction mix, e.g. douai=0.5,agen=0.5");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segments French appellate judgments and builds lawyer and case networks"};
  app.require_subcommand(0, 1);
  bool print_default = false;
  app.add_flag("--print-default-config", print_default, "Print the default configuration and exit");

  Overrides o;
  struct Command {
    CLI::App* app;
    std::function<void(const PipelineConfig&)> run;
  };
  std::vector<Command> commands;
  auto command = [&](const char* name, const char* help, std::function<void(const PipelineConfig&)> run) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    commands.push_back({sub, std::move(run)});
  };
  auto report = [](const std::string& line) { std::cerr << line << '\n'; };

  command("ingest", "Read judgment files into corpus.jsonl", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    const auto s = courtnet::stage_ingest(c);
    report("ingested " + std::to_string(s.documents) + " documents, skipped " + std::to_string(s.skipped_files));
  });
  command("segment", "Segment corpus.jsonl into segments.jsonl", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    const auto s = courtnet::stage_segment(c);
    report("segmented " + std::to_string(s.segmented) + ", failed " + std::to_string(s.failed));
  });
  command("extract", "Extract lawyers, articles and outcomes", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    const auto s = courtnet::stage_extract(c);
    report("extracted " + std::to_string(s.extracted) + " cases");
  });
  command("networks", "Build opposing, collaboration and case graphs", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    const auto s = courtnet::stage_networks(c);
    report("opposing network: " + std::to_string(s.opposing_nodes) + " nodes, " + std::to_string(s.opposing_edges) +
           " edges");
  });
  command("communities", "Detect case communities", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    report(std::to_string(courtnet::stage_communities(c)) + " communities");
  });
  command("rank", "Rank lawyers of the opposing network", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    report(std::to_string(courtnet::stage_rank(c)) + " lawyers ranked");
  });
  command("flowgraph", "Build per-jurisdiction sentence flow graphs", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    for (const auto& stem : courtnet::stage_flowgraph(c)) report("wrote " + stem);
  });
  command("synth", "Generate a synthetic corpus with ground truth", [&](const PipelineConfig& c) {
    courtnet::validate(c);
    const auto corpus = courtnet::stage_synth(c);
    report("generated " + std::to_string(corpus.documents.size()) + " documents");
  });
  command("run", "Run ingest through rank and write manifest.json", [&](const PipelineConfig& c) {
    const auto manifest = courtnet::run_pipeline(c);
    std::cout << manifest.dump(2) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (print_default) {
      std::cout << courtnet::to_json(PipelineConfig{}).dump(2) << '\n';
      return 0;
    }
    for (const auto& cmd : commands) {
      if (cmd.app->parsed()) {
        cmd.run(o.resolve());
        return 0;
      }
    }
    std::cerr << app.help();
    return 1;
  } catch (const courtnet::Error& e) {
    std::cerr << "courtnet: " << e.what() << '\n';
    return courtnet::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "courtnet: " << e.what() << '\n';
    return 2;
  }
}
