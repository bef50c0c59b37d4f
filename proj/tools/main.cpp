// Copyright 2026 The asrnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "asrnoise/errors.hpp"
#include "asrnoise/evaluation.hpp"
#include "asrnoise/generator.hpp"
#include "asrnoise/report.hpp"
#include "asrnoise/rng.hpp"
#include "asrnoise/run_config.hpp"
#include "asrnoise/tagging.hpp"
#include "asrnoise/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace asrnoise;

namespace {

struct CliContext {
  RunConfig cfg;
  std::string config_path;
  // Option, config key, per subcommand: file values fill options the user
  // did not pass on the command line.
  std::map<const CLI::App*, std::vector<std::pair<CLI::Option*, std::string>>> bound;
};

void apply_config_file(CliContext& ctx, const CLI::App* active) {
  if (ctx.config_path.empty()) return;
  const auto values = parse_config_file(ctx.config_path);
  for (const auto& [opt, key] : ctx.bound[active]) {
    if (opt->count() > 0) continue;  // flags override file values
    const auto it = values.find(key);
    if (it != values.end()) apply_config_value(ctx.cfg, key, it->second);
  }
  // Reject unknown keys even when every option was overridden.
  RunConfig probe;
  for (const auto& [key, value] : values) apply_config_value(probe, key, value);
}

void add_shared_options(CLI::App* cmd, CliContext& ctx) {
  RunConfig& cfg = ctx.cfg;
  cmd->add_option("--config", ctx.config_path,
                  "Flat key = value config file; flags override file values");
  auto bind = [&ctx, cmd](CLI::Option* opt, const std::string& key) {
    ctx.bound[cmd].emplace_back(opt, key);
  };
  bind(cmd->add_option("--seed", cfg.master_seed, "Master seed for all randomness"),
       "seed");
  bind(cmd->add_option("--out-dir", cfg.out_dir, "Directory for output artifacts"),
       "out-dir");
  bind(cmd->add_flag("--fallback", cfg.fallback,
                     "Use the deterministic offline corruptor when the LLM is "
                     "unavailable or rejects"),
       "fallback");
  bind(cmd->add_option("--endpoint", cfg.endpoint, "LLM chat endpoint URL"), "endpoint");
  bind(cmd->add_option("--api-key-env", cfg.api_key_env,
                       "Environment variable holding the bearer token"),
       "api-key-env");
  bind(cmd->add_option("--concurrency", cfg.concurrency,
                       "Maximum concurrent in-flight LLM requests"),
       "concurrency");
  bind(cmd->add_option("--retries", cfg.retries,
                       "Additional attempts after a rejected or failed request"),
       "retries");
  bind(cmd->add_option("--examples-k", cfg.examples_k,
                       "In-context examples per prompt (decorate: pairs to emit)"),
       "examples-k");
  bind(cmd->add_option("--multiplicity", cfg.multiplicity,
                       "Synthetic dialogues per clean dialogue"),
       "multiplicity");
  bind(cmd->add_option("--model", cfg.model, "Model name passed to the endpoint"),
       "model");
  bind(cmd->add_option("--temperature", cfg.temperature, "Sampling temperature"),
       "temperature");
  bind(cmd->add_option("--max-tokens", cfg.max_tokens, "Completion length bound"),
       "max-tokens");
  bind(cmd->add_option("--response-path", cfg.response_path,
                       "Dot path to the completion text in the response JSON"),
       "response-path");
}

json meta_json(const RunConfig& cfg) {
  return json{{"tool", "asrnoise"},
              {"version", kVersion},
              {"seed", cfg.master_seed},
              {"config_hash", cfg.hash()}};
}

void write_sidecar_meta(const fs::path& artifact, const RunConfig& cfg) {
  write_text_file(artifact.string() + ".meta.json", meta_json(cfg).dump(2) + "\n");
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

PairedCorpus load_pairs(const RunConfig& cfg) {
  if (!cfg.paired_path.empty()) {
    return load_paired_corpus(cfg.paired_path);
  }
  if (cfg.reference_path.empty() || cfg.hypothesis_path.empty()) {
    throw ConfigError("pass --paired, or both --reference and --hypothesis");
  }
  return pair_corpora(load_corpus(cfg.reference_path), load_corpus(cfg.hypothesis_path));
}

json counts_json(const ErrorCounts& counts) {
  json j{{"substitutions", counts.substitutions},
         {"deletions", counts.deletions},
         {"insertions", counts.insertions},
         {"matches", counts.matches},
         {"ref_len", counts.ref_len}};
  if (counts.ref_len > 0) {
    j["wer"] = static_cast<double>(counts.total_errors()) /
               static_cast<double>(counts.ref_len);
  }
  return j;
}

GenerationConfig generation_config(const RunConfig& cfg) {
  GenerationConfig gen;
  gen.master_seed = cfg.master_seed;
  gen.retries = cfg.retries;
  gen.fallback_enabled = cfg.fallback;
  gen.concurrency = cfg.concurrency;
  gen.multiplicity = cfg.multiplicity;
  gen.examples_in_prompt = cfg.examples_k;
  gen.selection = cfg.selection == "first" ? GenerationConfig::ExampleSelection::FirstK
                                           : GenerationConfig::ExampleSelection::RandomK;
  return gen;
}

std::unique_ptr<LlmClient> make_client(const RunConfig& cfg) {
  if (cfg.endpoint.empty()) return nullptr;
  HttpLlmConfig http;
  http.endpoint_url = cfg.endpoint;
  http.model = cfg.model;
  http.api_key_env = cfg.api_key_env;
  http.response_path = cfg.response_path;
  http.temperature = cfg.temperature;
  http.max_tokens = cfg.max_tokens;
  if (!cfg.fallback && !endpoint_reachable(http)) {
    throw EndpointError("endpoint " + cfg.endpoint +
                        " is unreachable and fallback is disabled");
  }
  return make_http_client(std::move(http));
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_profile(const RunConfig& cfg) {
  const PairedCorpus pairs = load_pairs(cfg);
  const ProfileEstimate est = estimate_profile_detailed(pairs, cfg.source_label);

  const fs::path dir = ensure_out_dir(cfg);
  save_profile(est.profile, dir / "profile.json");
  write_sidecar_meta(dir / "profile.json", cfg);

  json report{{"_meta", meta_json(cfg)},
              {"profile", json::parse(profile_to_json(est.profile))},
              {"per_turn", counts_json(est.per_turn_counts)},
              {"whole_dialogue", counts_json(est.whole_dialogue_counts)}};
  write_text_file(dir / "profile_report.json", report.dump(2) + "\n");

  std::vector<std::vector<std::string>> rows;
  auto add_row = [&rows](const std::string& label, const ErrorCounts& counts) {
    const double wer = counts.ref_len == 0
                           ? 0.0
                           : static_cast<double>(counts.total_errors()) /
                                 static_cast<double>(counts.ref_len);
    rows.push_back({label, std::to_string(counts.substitutions),
                    std::to_string(counts.deletions), std::to_string(counts.insertions),
                    std::to_string(counts.matches), std::to_string(counts.ref_len),
                    format_double(wer)});
  };
  add_row("per-turn", est.per_turn_counts);
  add_row("whole-dialogue", est.whole_dialogue_counts);
  const std::string table = format_table(
      {"aggregation", "sub", "del", "ins", "match", "ref_len", "wer"}, rows);
  write_text_file(dir / "profile_report.txt", table);
  std::cout << table;
  std::cout << "wrote " << (dir / "profile.json").string() << "\n";
  return 0;
}

int cmd_decorate(const RunConfig& cfg) {
  if (cfg.examples_k < 1) throw ConfigError("examples-k must be >= 1");
  if (cfg.selection != "random" && cfg.selection != "first") {
    throw ConfigError("selection must be \"random\" or \"first\"");
  }
  const PairedCorpus pairs = load_pairs(cfg);

  struct Candidate {
    const Turn* clean;
    const Turn* noisy;
    bool edited;
  };
  std::vector<Candidate> candidates;
  for (const auto& pair : pairs) {
    if (pair.reference.turns.size() != pair.hypothesis.turns.size()) continue;
    for (std::size_t t = 0; t < pair.reference.turns.size(); ++t) {
      const Turn& clean = pair.reference.turns[t];
      const Turn& noisy = pair.hypothesis.turns[t];
      const bool edited =
          error_counts(align(tokenize(clean.text), tokenize(noisy.text)))
              .total_errors() > 0;
      candidates.push_back(Candidate{&clean, &noisy, edited});
    }
  }
  const std::size_t k = static_cast<std::size_t>(cfg.examples_k);
  if (candidates.size() < k) {
    throw DataError("requested " + std::to_string(k) + " example pairs but only " +
                    std::to_string(candidates.size()) + " turn pairs are available");
  }

  // Pairs that demonstrate at least one edit first, then identity pairs.
  std::stable_partition(candidates.begin(), candidates.end(),
                        [](const Candidate& c) { return c.edited; });
  if (cfg.selection == "random") {
    const std::size_t edited =
        static_cast<std::size_t>(std::count_if(candidates.begin(), candidates.end(),
                                               [](const Candidate& c) { return c.edited; }));
    Rng rng(mix_seed(cfg.master_seed, std::string_view("decorate")));
    auto shuffle_range = [&rng, &candidates](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i + 1 < end; ++i) {
        const std::size_t j = i + rng.next_below(end - i);
        std::swap(candidates[i], candidates[j]);
      }
    };
    shuffle_range(0, edited);
    shuffle_range(edited, candidates.size());
  }

  std::vector<DecoratedPair> examples;
  for (std::size_t i = 0; i < k; ++i) {
    const auto [tagged_clean, tagged_noisy] =
        decorate_example_pair(*candidates[i].clean, *candidates[i].noisy);
    examples.push_back(
        DecoratedPair{render_tagged(tagged_clean), render_tagged(tagged_noisy)});
  }

  const fs::path dir = ensure_out_dir(cfg);
  save_examples(examples, dir / "examples.jsonl");
  write_sidecar_meta(dir / "examples.jsonl", cfg);
  std::cout << "wrote " << (dir / "examples.jsonl").string() << " (" << examples.size()
            << " pairs)\n";
  return 0;
}

int cmd_tag(const RunConfig& cfg) {
  if (cfg.clean_path.empty()) throw ConfigError("--clean is required");
  if (cfg.profile_path.empty()) throw ConfigError("--profile is required");
  const Corpus clean = load_corpus(cfg.clean_path);
  const ErrorProfile profile = load_profile(cfg.profile_path);
  const TokenizePolicy policy{};
  if (profile.normalization_policy_version != policy.version()) {
    throw DataError("profile normalization policy \"" +
                    profile.normalization_policy_version +
                    "\" does not match the run policy \"" + policy.version() + "\"");
  }

  const fs::path dir = ensure_out_dir(cfg);
  std::ofstream out(dir / "tagged.jsonl");
  if (!out) throw DataError("cannot open tagged.jsonl for writing");
  for (const auto& dialogue : clean) {
    json turns = json::array();
    for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
      const TokenSequence tokens = tokenize(dialogue.turns[t].text, policy);
      TaggedText tagged;
      if (!tokens.empty()) {
        const std::uint64_t seed = derive_seed(cfg.master_seed, dialogue.id, t);
        tagged = apply_plan(tokens, sample_error_plan(tokens, profile, seed));
      }
      json deleted = json::array();
      for (const auto& [index, token] : tagged.deleted_tokens) {
        deleted.push_back(json::array({index, token}));
      }
      turns.push_back({{"speaker", dialogue.turns[t].speaker.to_label()},
                       {"tagged", render_tagged(tagged)},
                       {"deleted", std::move(deleted)}});
    }
    out << json{{"id", dialogue.id}, {"turns", std::move(turns)}}.dump() << '\n';
  }
  out.close();
  write_sidecar_meta(dir / "tagged.jsonl", cfg);
  std::cout << "wrote " << (dir / "tagged.jsonl").string() << "\n";
  return 0;
}

int cmd_generate(const RunConfig& cfg) {
  if (cfg.clean_path.empty()) throw ConfigError("--clean is required");
  if (cfg.profile_path.empty()) throw ConfigError("--profile is required");
  if (cfg.examples_path.empty()) throw ConfigError("--examples is required");

  const Corpus clean = load_corpus(cfg.clean_path);
  const ErrorProfile profile = load_profile(cfg.profile_path);
  const std::vector<DecoratedPair> examples = load_examples(cfg.examples_path);
  EntityLexicon lexicon;
  if (!cfg.lexicon_path.empty()) lexicon = load_lexicon(cfg.lexicon_path);

  std::unique_ptr<LlmClient> client = make_client(cfg);
  const GenerationOutput output =
      generate_corpus(clean, examples, profile, generation_config(cfg), client.get(),
                      lexicon.empty() ? nullptr : &lexicon);

  const fs::path dir = ensure_out_dir(cfg);
  save_corpus(output.synthetic, dir / "synthetic.jsonl");
  write_sidecar_meta(dir / "synthetic.jsonl", cfg);
  save_records(output.records, dir / "records.jsonl");
  write_sidecar_meta(dir / "records.jsonl", cfg);

  const GenerationSummary& s = output.summary;
  json summary{{"_meta", meta_json(cfg)},
               {"dialogues", s.dialogues},
               {"turns", s.turns},
               {"accepted", s.accepted},
               {"repaired_by_fallback", s.repaired_by_fallback},
               {"failed", s.failed},
               {"passthrough_turns", s.passthrough_turns},
               {"realized", counts_json(s.realized_counts)},
               {"outputs",
                {{"synthetic", "synthetic.jsonl"}, {"records", "records.jsonl"}}}};
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");

  std::vector<std::vector<std::string>> rows{
      {"dialogues", std::to_string(s.dialogues)},
      {"turns", std::to_string(s.turns)},
      {"accepted", std::to_string(s.accepted)},
      {"repaired_by_fallback", std::to_string(s.repaired_by_fallback)},
      {"failed", std::to_string(s.failed)},
      {"passthrough_turns", std::to_string(s.passthrough_turns)},
      {"realized_wer", format_double(s.realized_wer)}};
  const std::string table = format_table({"field", "value"}, rows);
  write_text_file(dir / "summary.txt", table);
  std::cout << table;
  std::cout << "wrote " << (dir / "synthetic.jsonl").string() << "\n";
  return 0;
}

std::vector<LabeledCorpus> parse_labeled(const std::vector<std::string>& specs,
                                         const char* flag) {
  std::vector<LabeledCorpus> corpora;
  for (const auto& spec : specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
      throw ConfigError(std::string(flag) + " expects label=path, got \"" + spec + "\"");
    }
    corpora.push_back(LabeledCorpus{spec.substr(0, eq), load_corpus(spec.substr(eq + 1))});
  }
  return corpora;
}

void write_matrix_artifacts(const SimilarityMatrix& matrix, const fs::path& dir,
                            const RunConfig& cfg) {
  const std::string stem = "similarity_" + matrix.metric_name;
  json j{{"_meta", meta_json(cfg)},
         {"metric", matrix.metric_name},
         {"higher_is_closer", matrix.higher_is_closer},
         {"row_labels", matrix.row_labels},
         {"col_labels", matrix.col_labels},
         {"cells", matrix.cells}};
  write_text_file(dir / (stem + ".json"), j.dump(2) + "\n");
  write_text_file(dir / (stem + ".csv"), matrix_to_csv(matrix));
  const std::string table = matrix_to_table(matrix);
  write_text_file(dir / (stem + ".txt"), table);
  std::cout << table << "\n";
}

/// Hook for scorers this tool cannot run itself (e.g. embedding-based
/// metrics): per-cell numbers from a JSONL file of
/// {"row": asr_label, "col": syn_label, "value": number} merged into a
/// matrix alongside the built-in ones.
SimilarityMatrix external_matrix(const fs::path& path,
                                 const std::vector<LabeledCorpus>& asr,
                                 const std::vector<LabeledCorpus>& synthetic) {
  SimilarityMatrix matrix;
  matrix.metric_name = "external";
  for (const auto& lc : asr) matrix.row_labels.push_back(lc.label);
  for (const auto& lc : synthetic) matrix.col_labels.push_back(lc.label);
  matrix.cells.assign(asr.size(),
                      std::vector<double>(synthetic.size(),
                                          std::numeric_limits<double>::quiet_NaN()));
  std::ifstream in(path);
  if (!in) throw DataError("cannot open external scores " + path.string());
  std::string line;
  std::size_t line_no = 0;
  auto index_of = [](const std::vector<std::string>& labels, const std::string& label,
                     const std::string& where) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw DataError(where + ": unknown label \"" + label + "\"");
    return static_cast<std::size_t>(it - labels.begin());
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("row") || !j.contains("col") ||
        !j.contains("value") || !j["value"].is_number()) {
      throw DataError(where + ": expected {\"row\", \"col\", \"value\"}");
    }
    const std::size_t r = index_of(matrix.row_labels, j["row"].get<std::string>(), where);
    const std::size_t c = index_of(matrix.col_labels, j["col"].get<std::string>(), where);
    matrix.cells[r][c] = j["value"].get<double>();
  }
  for (std::size_t r = 0; r < matrix.cells.size(); ++r) {
    for (std::size_t c = 0; c < matrix.cells[r].size(); ++c) {
      if (std::isnan(matrix.cells[r][c])) {
        throw DataError("external scores missing cell (" + matrix.row_labels[r] + ", " +
                        matrix.col_labels[c] + ")");
      }
    }
  }
  return matrix;
}

int cmd_evaluate(const RunConfig& cfg, const std::vector<std::string>& asr_specs,
                 const std::vector<std::string>& syn_specs,
                 const std::string& external_scores_path) {
  if (cfg.reference_path.empty()) throw ConfigError("--reference is required");
  const Corpus reference = load_corpus(cfg.reference_path);
  const std::vector<LabeledCorpus> asr = parse_labeled(asr_specs, "--asr");
  const std::vector<LabeledCorpus> synthetic = parse_labeled(syn_specs, "--syn");
  if (asr.empty()) throw ConfigError("at least one --asr label=path is required");

  std::vector<SimilarityMetric> metrics;
  if (cfg.metric == "all") {
    metrics = {SimilarityMetric::WerAgreement, SimilarityMetric::RougeL,
               SimilarityMetric::ProfileDistance};
  } else {
    metrics = {similarity_metric_from_string(cfg.metric)};
  }

  const fs::path dir = ensure_out_dir(cfg);
  for (SimilarityMetric metric : metrics) {
    write_matrix_artifacts(similarity_matrix(synthetic, asr, reference, metric), dir,
                           cfg);
  }
  if (!external_scores_path.empty()) {
    write_matrix_artifacts(external_matrix(external_scores_path, asr, synthetic), dir,
                           cfg);
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.clean_path.empty()) throw ConfigError("--clean is required");
  if (cfg.profile_path.empty()) throw ConfigError("--profile is required");
  if (cfg.examples_path.empty()) throw ConfigError("--examples is required");
  if (cfg.lexicon_path.empty()) throw ConfigError("--lexicon is required");

  const Corpus clean = load_corpus(cfg.clean_path);
  const ErrorProfile profile = load_profile(cfg.profile_path);
  const std::vector<DecoratedPair> examples = load_examples(cfg.examples_path);
  const EntityLexicon lexicon = load_lexicon(cfg.lexicon_path);
  const std::vector<double> scales = cfg.parsed_scales();

  std::unique_ptr<LlmClient> client = make_client(cfg);
  const SweepReport report = noise_sweep(clean, profile, scales, examples,
                                         generation_config(cfg), lexicon, client.get());

  const fs::path dir = ensure_out_dir(cfg);
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"scale", r.scale},
                    {"target_wer", r.target_wer},
                    {"realized_wer", r.realized_wer},
                    {"rouge_l_f1", r.rouge_l_f1},
                    {"entity_f1", r.entity_f1}});
  }
  json j{{"_meta", meta_json(cfg)},
         {"profile_label", report.profile_label},
         {"rows", std::move(rows)}};
  write_text_file(dir / "sweep.json", j.dump(2) + "\n");
  const std::string table = sweep_to_table(report);
  write_text_file(dir / "sweep.txt", table);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asrnoise: profile ASR word errors and synthesize matching "
               "noisy dialogue corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CliContext ctx;
  RunConfig& cfg = ctx.cfg;
  std::vector<std::string> asr_specs;
  std::vector<std::string> syn_specs;
  std::string external_scores_path;

  CLI::App* profile_cmd = app.add_subcommand(
      "profile", "Estimate an error profile from a paired reference/ASR corpus");
  CLI::App* decorate_cmd = app.add_subcommand(
      "decorate", "Build tagged in-context example pairs from a paired corpus");
  CLI::App* tag_cmd = app.add_subcommand(
      "tag", "Sample error plans from a profile and emit tagged utterances");
  CLI::App* generate_cmd = app.add_subcommand(
      "generate", "Generate a synthetic noisy corpus from a clean corpus");
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Cross-corpus similarity matrices (ASR rows vs synthetic columns)");
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Generate at scaled noise rates and report realized metrics");

  for (CLI::App* cmd : {profile_cmd, decorate_cmd, tag_cmd, generate_cmd,
                        evaluate_cmd, sweep_cmd}) {
    add_shared_options(cmd, ctx);
  }
  auto bind = [&ctx](CLI::App* cmd, CLI::Option* opt, const std::string& key) {
    ctx.bound[cmd].emplace_back(opt, key);
  };

  for (CLI::App* cmd : {profile_cmd, decorate_cmd}) {
    bind(cmd,
         cmd->add_option("--paired", cfg.paired_path,
                         "Paired corpus JSONL (reference + hypothesis per line)"),
         "paired");
    bind(cmd,
         cmd->add_option("--reference", cfg.reference_path,
                         "Reference corpus JSONL (joined with --hypothesis on id)"),
         "reference");
    bind(cmd,
         cmd->add_option("--hypothesis", cfg.hypothesis_path,
                         "Hypothesis corpus JSONL"),
         "hypothesis");
  }
  bind(profile_cmd,
       profile_cmd->add_option("--label", cfg.source_label,
                               "Source label stored in the profile"),
       "label");
  bind(decorate_cmd,
       decorate_cmd->add_option("--selection", cfg.selection,
                                "Pair selection: random | first"),
       "selection");

  for (CLI::App* cmd : {tag_cmd, generate_cmd, sweep_cmd}) {
    bind(cmd, cmd->add_option("--clean", cfg.clean_path, "Clean corpus JSONL"),
         "clean");
    bind(cmd, cmd->add_option("--profile", cfg.profile_path, "Error profile JSON"),
         "profile");
  }
  for (CLI::App* cmd : {generate_cmd, sweep_cmd}) {
    bind(cmd,
         cmd->add_option("--examples", cfg.examples_path,
                         "Decorated examples JSONL (from decorate)"),
         "examples");
  }
  bind(generate_cmd,
       generate_cmd->add_option("--lexicon", cfg.lexicon_path,
                                "Entity lexicon used to filter inserted words"),
       "lexicon");
  bind(generate_cmd,
       generate_cmd->add_option("--selection", cfg.selection,
                                "Prompt example selection: random | first"),
       "selection");

  bind(evaluate_cmd,
       evaluate_cmd->add_option("--reference", cfg.reference_path,
                                "Clean reference corpus JSONL"),
       "reference");
  evaluate_cmd->add_option("--asr", asr_specs, "ASR corpus as label=path (repeatable)");
  evaluate_cmd->add_option("--syn", syn_specs,
                           "Synthetic corpus as label=path (repeatable)");
  bind(evaluate_cmd,
       evaluate_cmd->add_option("--metric", cfg.metric,
                                "wer_agreement | rouge_l | profile_distance | all"),
       "metric");
  bind(evaluate_cmd,
       evaluate_cmd->add_option("--lexicon", cfg.lexicon_path, "Entity lexicon file"),
       "lexicon");
  evaluate_cmd->add_option(
      "--external-scores", external_scores_path,
      "JSONL of {row, col, value} cells from an external scorer, merged as an "
      "extra matrix");

  bind(sweep_cmd,
       sweep_cmd->add_option("--lexicon", cfg.lexicon_path, "Entity lexicon file"),
       "lexicon");
  bind(sweep_cmd,
       sweep_cmd->add_option("--scales", cfg.scales,
                             "Comma-separated WER multipliers, e.g. 0,0.5,1,1.5"),
       "scales");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (CLI::App* cmd : {profile_cmd, decorate_cmd, tag_cmd, generate_cmd,
                          evaluate_cmd, sweep_cmd}) {
      if (app.got_subcommand(cmd)) apply_config_file(ctx, cmd);
    }
    if (app.got_subcommand(profile_cmd)) {
      return cmd_profile(cfg);
    }
    if (app.got_subcommand(decorate_cmd)) {
      return cmd_decorate(cfg);
    }
    if (app.got_subcommand(tag_cmd)) {
      return cmd_tag(cfg);
    }
    if (app.got_subcommand(generate_cmd)) {
      cfg.validate();  // generation needs an endpoint or the fallback
      return cmd_generate(cfg);
    }
    if (app.got_subcommand(evaluate_cmd)) {
      return cmd_evaluate(cfg, asr_specs, syn_specs, external_scores_path);
    }
    if (app.got_subcommand(sweep_cmd)) {
      cfg.validate();
      return cmd_sweep(cfg);
    }
    std::cerr << "no subcommand given\n";
    return 1;
  } catch (const EndpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
