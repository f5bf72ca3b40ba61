// tools/commands.cc

// Copyright 2026  The arsg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "arsg/app/checkpoint.h"
#include "arsg/app/config.h"
#include "arsg/app/trainer.h"
#include "arsg/data/dataset-io.h"
#include "arsg/data/metrics.h"
#include "arsg/data/synth.h"
#include "arsg/lm/arpa.h"
#include "arsg/lm/fst-ops.h"
#include "arsg/lm/lm-builder.h"
#include "arsg/lm/prefix-scorer.h"
#include "arsg/search/beam-search.h"
#include "json.hpp"

namespace arsg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Bad input from the user: missing files, malformed arguments.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void RequireFile(const std::string& path, const std::string& what) {
  if (path.empty()) throw UserError(what + " path is not set");
  if (!fs::exists(path)) throw UserError(what + " not found: " + path);
}

RunConfig ReadConfig(const std::string& path,
                     const std::vector<std::string>& overrides) {
  if (path.empty()) return ParseConfig("", overrides);
  RequireFile(path, "config");
  return LoadConfigFile(path, overrides);
}

json ScheduleJson(const SchedulePolicy& p) {
  return {{"s_min", p.s_min},
          {"s_max", p.s_max},
          {"v_min", p.v_min},
          {"v_max", p.v_max}};
}

// ---------------------------------------------------------------- datagen

struct DatagenArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
};

int Datagen(const DatagenArgs& a, std::ostream& out) {
  RunConfig cfg = ReadConfig(a.config, a.overrides);
  if (a.out.empty()) throw UserError("--out is required");
  const Alphabet alphabet = Alphabet::Standard();
  fs::create_directories(a.out);
  struct Split {
    const char* name;
    int count;
  };
  const Split splits[] = {{"train", cfg.data.train_count},
                          {"dev", cfg.data.dev_count},
                          {"test", cfg.data.test_count}};
  std::vector<SynthLayout> train_layouts;
  uint64_t stream = 0;
  for (const Split& s : splits) {
    SyntheticTaskSpec spec = cfg.data.spec;
    spec.id_prefix = std::string(s.name) + "-";
    std::vector<SynthLayout> layouts;
    auto utts = GenerateSynthetic(spec, s.count, alphabet, &layouts, stream++);
    const fs::path manifest = fs::path(a.out) / (std::string(s.name) + ".tsv");
    WriteDataset(manifest.string(),
                 (fs::path(a.out) / "feats" / s.name).string(), utts);
    if (std::string(s.name) == "train") train_layouts = std::move(layouts);
    out << "wrote " << utts.size() << " utterances to " << manifest.string()
        << "\n";
  }
  if (!train_layouts.empty()) {
    const fs::path sched = fs::path(a.out) / "schedule.json";
    std::ofstream f(sched);
    f << ScheduleJson(EstimateSchedule(train_layouts)).dump(2) << "\n";
    if (!f) throw UserError("cannot write " + sched.string());
    out << "wrote " << sched.string() << "\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------- fst-build

struct FstBuildArgs {
  std::string arpa;
  std::string vocab;
  std::string out;
  bool no_determinize = false;
  int max_states = 1000000;
};

int FstBuild(const FstBuildArgs& a, std::ostream& out) {
  RequireFile(a.arpa, "ARPA file");
  if (a.out.empty()) throw UserError("--out is required");
  ArpaModel arpa = ReadArpaFile(a.arpa);
  std::vector<std::string> vocab;
  if (!a.vocab.empty()) {
    RequireFile(a.vocab, "vocabulary");
    vocab = ReadVocabulary(a.vocab);
  }
  CharLmOptions opts;
  opts.determinize = !a.no_determinize;
  opts.max_states = a.max_states;
  CharLm lm;
  try {
    lm = BuildCharLm(arpa, vocab, Alphabet::Standard(), opts);
  } catch (const DeterminizeBudgetError& e) {
    throw UserError(std::string(e.what()) +
                    "; rerun with --no-determinize to score with the "
                    "nondeterministic L o G");
  }
  WriteWfstFile(lm.fst, a.out);
  out << "wrote " << a.out << ": " << lm.fst.num_states() << " states, "
      << lm.fst.NumArcs() << " arcs, " << lm.words.size() << " words, "
      << (lm.determinized ? "determinized+minimized+pushed"
                          : "nondeterministic")
      << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ train

struct TrainArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string workdir;
  bool resume = false;
};

int Train(const TrainArgs& a, std::ostream& out) {
  RunConfig cfg = ReadConfig(a.config, a.overrides);
  if (!a.workdir.empty()) cfg.paths.workdir = a.workdir;
  RequireFile(cfg.paths.train, "training manifest");
  if (!cfg.window.schedule && cfg.train.schedule_epochs > 0) {
    const fs::path sched =
        fs::path(cfg.paths.train).parent_path() / "schedule.json";
    if (!fs::exists(sched))
      throw UserError("window.schedule is unset and " + sched.string() +
                      " does not exist");
    std::ifstream in(sched);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw UserError("malformed " + sched.string());
    SchedulePolicy p;
    p.s_min = j.at("s_min").get<double>();
    p.s_max = j.at("s_max").get<double>();
    p.v_min = j.at("v_min").get<double>();
    p.v_max = j.at("v_max").get<double>();
    cfg.window.schedule = p;
  }
  const Alphabet alphabet = Alphabet::Standard();
  auto train = ReadDataset(cfg.paths.train, alphabet);
  std::vector<Utterance> dev;
  if (!cfg.paths.dev.empty()) {
    RequireFile(cfg.paths.dev, "dev manifest");
    dev = ReadDataset(cfg.paths.dev, alphabet);
  }
  auto model = MakeModel(cfg, alphabet);
  TrainerOptions opts;
  opts.workdir = cfg.paths.workdir;
  opts.on_epoch = [&out](const EpochStats& s) {
    out << "epoch " << s.epoch << " [" << s.phase << "] train_nll "
        << s.train_nll << " dev_nll " << s.dev_nll << " dev_cer " << s.dev_cer
        << (s.best ? " *" : "") << " (" << s.seconds << " s)\n"
        << std::flush;
  };
  Trainer trainer(cfg, *model, std::move(train), std::move(dev), opts);
  if (a.resume && trainer.Resume()) {
    out << "resumed after epoch " << trainer.progress().epoch << "\n";
  } else {
    if (fs::exists(fs::path(cfg.paths.workdir) / "metrics.jsonl"))
      fs::remove(fs::path(cfg.paths.workdir) / "metrics.jsonl");
    trainer.InitializeParameters();
  }
  trainer.Run();
  out << "best dev score " << trainer.progress().best_cer << " at epoch "
      << trainer.progress().best_epoch << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- decode

struct DecodeArgs {
  std::string checkpoint;
  std::string data;
  std::string lm;
  std::string out;
  std::vector<std::string> overrides;
  int beam = 0;
  double lm_weight = -1;
  double length_bonus = -1;
};

int Decode(const DecodeArgs& a, std::ostream& out) {
  RequireFile(a.checkpoint, "checkpoint");
  RequireFile(a.data, "data manifest");
  if (a.out.empty()) throw UserError("--out is required");
  Checkpoint ckpt = LoadCheckpoint(a.checkpoint);
  RunConfig cfg = ParseConfig(ckpt.config_json, a.overrides);
  if (a.beam > 0) cfg.decode.beam = a.beam;
  if (a.lm_weight >= 0) cfg.decode.lm_weight = a.lm_weight;
  const Alphabet alphabet = Alphabet::Standard();
  auto model = MakeModel(cfg, alphabet);
  RestoreParameters(ckpt, *model);

  std::unique_ptr<Wfst> fst;
  std::unique_ptr<PrefixScorer> scorer;
  if (!a.lm.empty()) {
    RequireFile(a.lm, "LM FST");
    fst = std::make_unique<Wfst>(ReadWfstFile(a.lm));
    scorer = std::make_unique<PrefixScorer>(*fst, alphabet);
  }
  const bool with_lm = scorer && cfg.decode.lm_weight != 0;
  DecodeConfig dc = MakeDecodeConfig(cfg, with_lm);
  if (a.length_bonus >= 0) dc.length_bonus = a.length_bonus;

  auto utts = ReadDataset(a.data, alphabet);
  std::ofstream f(a.out);
  if (!f) throw UserError("cannot write " + a.out);
  for (const Utterance& u : utts) {
    EncodedUtterance enc = model->EncodeForSearch(u.frames);
    DecodeConfig per = dc;
    if (cfg.decode.max_len == 0) per.max_len = 2 * enc.length() + 10;
    BeamSearch search(*model, scorer.get(), per);
    DecodeResult r = search.Decode(enc);
    json j = {{"id", u.id},
              {"text", alphabet.Render(r.labels)},
              {"cost", r.cost},
              {"ed_cost", r.ed_cost},
              {"lm_cost", r.lm_cost},
              {"length", r.length},
              {"terminated", r.terminated}};
    f << j.dump() << "\n";
  }
  out << "decoded " << utts.size() << " utterances to " << a.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ score

struct ScoreArgs {
  std::string hyp;
  std::string data;
};

int Score(const ScoreArgs& a, std::ostream& out) {
  RequireFile(a.hyp, "hypothesis file");
  RequireFile(a.data, "data manifest");
  std::ifstream in(a.data);
  std::map<std::string, std::string> refs;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    size_t t1 = line.find('\t'), t2 = line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw UserError("malformed manifest " + a.data);
    refs[line.substr(0, t1)] = line.substr(t1 + 1, t2 - t1 - 1);
  }
  std::ifstream h(a.hyp);
  ErrorCounts chars, words;
  int n = 0;
  for (std::string line; std::getline(h, line);) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("id") || !j.contains("text"))
      throw UserError("malformed hypothesis line in " + a.hyp);
    auto it = refs.find(j["id"].get<std::string>());
    if (it == refs.end())
      throw UserError("hypothesis for unknown utterance " +
                      j["id"].get<std::string>());
    chars += CharErrors(j["text"].get<std::string>(), it->second);
    words += WordErrors(j["text"].get<std::string>(), it->second);
    ++n;
  }
  if (n == 0) throw UserError("no hypotheses in " + a.hyp);
  json report = {{"utterances", n},
                 {"cer", chars.Rate()},
                 {"wer", words.Rate()},
                 {"char_errors", chars.errors},
                 {"chars", chars.reference_length},
                 {"word_errors", words.errors},
                 {"words", words.reference_length}};
  out << report.dump() << "\n";
  return kExitOk;
}

}  // namespace

int RunCommandLine(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"arsg: attention-based speech recognizer"};
  app.require_subcommand(1);

  DatagenArgs dg;
  auto* c_dg = app.add_subcommand("datagen", "generate a synthetic dataset");
  c_dg->add_option("-c,--config", dg.config, "JSON config file");
  c_dg->add_option("--set", dg.overrides, "override, e.g. data.noise_std=0.3");
  c_dg->add_option("-o,--out", dg.out, "output directory")->required();

  FstBuildArgs fb;
  auto* c_fb = app.add_subcommand("fst-build", "build the character-level LM");
  c_fb->add_option("--arpa", fb.arpa, "ARPA language model")->required();
  c_fb->add_option("--vocab", fb.vocab, "vocabulary, one word per line");
  c_fb->add_option("-o,--out", fb.out, "output FST (text format)")->required();
  c_fb->add_flag("--no-determinize", fb.no_determinize,
                 "keep the nondeterministic L o G");
  c_fb->add_option("--max-states", fb.max_states, "determinization budget");

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "train a model");
  c_tr->add_option("-c,--config", tr.config, "JSON config file");
  c_tr->add_option("--set", tr.overrides, "config override key=value");
  c_tr->add_option("--workdir", tr.workdir, "checkpoint/metrics directory");
  c_tr->add_flag("--resume", tr.resume, "continue from workdir/last.ckpt");

  DecodeArgs de;
  auto* c_de = app.add_subcommand("decode", "beam-search decoding");
  c_de->add_option("--checkpoint", de.checkpoint, "model checkpoint")
      ->required();
  c_de->add_option("--data", de.data, "manifest to decode")->required();
  c_de->add_option("--lm", de.lm, "character-level LM FST");
  c_de->add_option("-o,--out", de.out, "output (JSON lines)")->required();
  c_de->add_option("--set", de.overrides, "config override key=value");
  c_de->add_option("--beam", de.beam, "beam size");
  c_de->add_option("--lm-weight", de.lm_weight, "LM weight (beta)");
  c_de->add_option("--length-bonus", de.length_bonus, "length bonus (gamma)");

  ScoreArgs sc;
  auto* c_sc = app.add_subcommand("score", "CER/WER of decoded output");
  c_sc->add_option("--hyp", sc.hyp, "decode output")->required();
  c_sc->add_option("--data", sc.data, "reference manifest")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }

  try {
    if (c_dg->parsed()) return Datagen(dg, out);
    if (c_fb->parsed()) return FstBuild(fb, out);
    if (c_tr->parsed()) return Train(tr, out);
    if (c_de->parsed()) return Decode(de, out);
    if (c_sc->parsed()) return Score(sc, out);
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const ArpaError& e) {
    err << "ARPA error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const FstError& e) {
    err << "FST error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const CheckpointError& e) {
    err << "checkpoint error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const TrainingDiverged& e) {
    err << "training diverged: " << e.what()
        << " (last good checkpoint kept)\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << "internal error: no command ran\n";
  return kExitInternal;
}

}  // namespace arsg
