// src/cli/commands.cc

// Copyright 2026  The voxkit Authors

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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "voxkit/audio/features.h"
#include "voxkit/audio/wav.h"
#include "voxkit/common.h"
#include "voxkit/corpus/manifest.h"
#include "voxkit/corpus/splits.h"
#include "voxkit/corpus/synth.h"
#include "voxkit/curation/curation.h"
#include "voxkit/eval/metrics.h"
#include "voxkit/eval/trials.h"
#include "voxkit/gmm/diag_gmm.h"
#include "voxkit/ivector/baum_welch.h"
#include "voxkit/ivector/plda.h"
#include "voxkit/ivector/svm.h"
#include "voxkit/ivector/total_variability.h"
#include "voxkit/nn/checkpoint.h"
#include "voxkit/nn/inference.h"
#include "voxkit/nn/siamese.h"
#include "voxkit/nn/trainer.h"

namespace voxkit::cli {

namespace fs = std::filesystem;

namespace {

using corpus::Manifest;

// Results go to --out when set, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
    if (path.empty()) return;
    EnsureParent(path);
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) Fail(ErrorKind::kIo, "cannot write " + path);
    os_ = file_.get();
  }
  std::ostream &os() { return *os_; }

  static void EnsureParent(const std::string &path) {
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream *os_;
};

std::string Require(const RunConfig &cfg, const std::string &key) {
  const std::string &v = cfg.Get(key);
  if (v.empty()) throw UsageError(FlagName(key) + " is required");
  return v;
}

std::string Choice(const RunConfig &cfg, const std::string &key, std::initializer_list<const char *> options) {
  const std::string &v = cfg.Get(key);
  for (const char *o : options)
    if (v == o) return v;
  std::string all;
  for (const char *o : options) all += std::string(all.empty() ? "" : "|") + o;
  throw UsageError(FlagName(key) + " must be one of " + all + ", got '" + v + "'");
}

int Positive(const RunConfig &cfg, const std::string &key) {
  const int v = cfg.GetInt(key);
  if (v < 1) throw UsageError(FlagName(key) + " must be at least 1");
  return v;
}

std::string FeaturePath(const std::string &dir, const std::string &utt) {
  return (fs::path(dir) / (utt + ".vxf")).string();
}

std::string FeatureDir(const RunConfig &cfg, const std::string &kind) {
  const std::string &v = cfg.Get("feats");
  return v.empty() ? (fs::path(cfg.Get("data_dir")) / "feats" / kind).string() : v;
}

std::vector<Matrix> LoadFeatures(const std::string &dir, const Manifest &m) {
  std::vector<Matrix> out;
  out.reserve(m.size());
  for (const auto &r : m) out.push_back(ReadFeatureFile(FeaturePath(dir, r.utterance_id)));
  return out;
}

std::vector<Spectrogram> LoadSpectrograms(const std::string &dir, const Manifest &m) {
  std::vector<Spectrogram> out;
  out.reserve(m.size());
  for (const auto &r : m) out.push_back(Spectrogram{ReadFeatureFile(FeaturePath(dir, r.utterance_id))});
  return out;
}

std::map<std::string, int> ClassIndex(const std::vector<std::string> &classes) {
  std::map<std::string, int> idx;
  for (size_t i = 0; i < classes.size(); ++i) idx[classes[i]] = static_cast<int>(i);
  return idx;
}

std::vector<int> Labels(const Manifest &m, const std::map<std::string, int> &idx) {
  std::vector<int> y;
  y.reserve(m.size());
  for (const auto &r : m) {
    const auto it = idx.find(r.poi_id);
    if (it == idx.end()) Fail(ErrorKind::kInvalidInput, "POI " + r.poi_id + " is not a known class");
    y.push_back(it->second);
  }
  return y;
}

std::string Join(const std::vector<std::string> &v) {
  std::string s;
  for (const auto &x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

std::vector<std::string> Split(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Vectors file: one line per utterance, "<utt> v1 ... vn".
void WriteVectors(std::ostream &os, const Manifest &m, const std::vector<Vector> &v) {
  os.precision(17);
  for (size_t i = 0; i < m.size(); ++i) {
    os << m[i].utterance_id;
    for (Eigen::Index j = 0; j < v[i].size(); ++j) os << ' ' << v[i](j);
    os << '\n';
  }
}

std::map<std::string, Vector> LoadVectors(const std::string &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  std::map<std::string, Vector> out;
  std::string line;
  int lineno = 0;
  Eigen::Index dim = -1;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string id;
    if (!(ls >> id)) continue;
    std::vector<double> xs;
    std::string tok;
    while (ls >> tok) {
      try {
        xs.push_back(std::stod(tok));
      } catch (const std::exception &) {
        Fail(ErrorKind::kIo, path + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
      }
    }
    if (xs.empty()) Fail(ErrorKind::kIo, path + ":" + std::to_string(lineno) + ": empty vector");
    if (dim >= 0 && static_cast<Eigen::Index>(xs.size()) != dim)
      Fail(ErrorKind::kIo, path + ":" + std::to_string(lineno) + ": dimension differs from earlier lines");
    dim = static_cast<Eigen::Index>(xs.size());
    out[id] = Eigen::Map<Vector>(xs.data(), dim);
  }
  if (out.empty()) Fail(ErrorKind::kIo, path + ": no vectors");
  return out;
}

const Vector &Lookup(const std::map<std::string, Vector> &vecs, const std::string &id) {
  const auto it = vecs.find(id);
  if (it == vecs.end()) Fail(ErrorKind::kInvalidInput, "no vector for utterance " + id);
  return it->second;
}

Matrix StackRows(const std::map<std::string, Vector> &vecs, const Manifest &m, bool normalize) {
  if (m.empty()) Fail(ErrorKind::kInsufficientData, "empty manifest");
  const Eigen::Index dim = Lookup(vecs, m[0].utterance_id).size();
  Matrix x(static_cast<Eigen::Index>(m.size()), dim);
  for (size_t i = 0; i < m.size(); ++i) {
    Vector v = Lookup(vecs, m[i].utterance_id);
    if (v.size() != dim) Fail(ErrorKind::kModelMismatch, "vector dimensions differ");
    if (normalize) {
      const double n = v.norm();
      if (n > 0) v /= n;
    }
    x.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return x;
}

std::map<std::string, std::string> CheckpointInfo(const nn::Checkpoint &ck) {
  std::istringstream is(ck.config);
  return ParseKeyValues(is, "checkpoint config");
}

// ---- subcommands

void SynthData(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  corpus::SynthOptions o;
  o.speakers = Positive(cfg, "speakers");
  o.videos_per_speaker = Positive(cfg, "videos");
  o.utterances_per_video = Positive(cfg, "utterances");
  o.min_duration_s = cfg.GetDouble("min_duration");
  o.max_duration_s = cfg.GetDouble("max_duration");
  o.seed = cfg.GetU64("seed");
  const std::string root = Require(cfg, "out");
  const Manifest m = corpus::WriteSyntheticCorpus(o, root);
  log << "wrote " << m.size() << " utterances to " << root << '\n';
}

void ExtractFeatures(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const std::string kind = Choice(cfg, "kind", {"spectrogram", "mfcc"});
  const std::string manifest_path = Require(cfg, "manifest");
  const Manifest m = corpus::LoadManifest(manifest_path);
  std::string out = cfg.Get("out");
  if (out.empty()) out = (fs::path(cfg.Get("data_dir")) / "feats" / kind).string();
  fs::create_directories(out);
  const fs::path base = fs::path(manifest_path).parent_path();
  for (const auto &r : m) {
    fs::path audio = r.audio_path;
    if (audio.is_relative()) audio = base / audio;
    const AudioBuffer buf = LoadAudio16k(audio.string());
    const Matrix feat = kind == "mfcc" ? Cmvn(ComputeMfcc(buf)).coeffs
                                       : NormalizeSpectrogram(ComputeSpectrogram(buf)).magnitudes;
    WriteFeatureFile(FeaturePath(out, r.utterance_id), feat);
  }
  log << "wrote " << m.size() << ' ' << kind << " files to " << out << '\n';
}

void TrainUbmCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  gmm::UbmOptions o;
  o.components = Positive(cfg, "components");
  o.iters = Positive(cfg, "iters");
  o.init_frames = static_cast<size_t>(cfg.GetU64("init_frames"));
  o.seed = cfg.GetU64("seed");
  const gmm::UbmResult r = gmm::TrainUbm(LoadFeatures(FeatureDir(cfg, "mfcc"), m), o);
  const std::string out = Require(cfg, "out");
  Sink::EnsureParent(out);
  gmm::SaveGmm(out, r.gmm);
  log << "ubm: " << o.components << " components, final log-likelihood "
      << (r.log_likelihood.empty() ? 0.0 : r.log_likelihood.back()) << '\n';
}

std::vector<ivector::BaumWelchStats> StatsFor(const RunConfig &cfg, const gmm::DiagonalGmm &ubm,
                                              const Manifest &m) {
  return ivector::AccumulateStatsBatch(ubm, LoadFeatures(FeatureDir(cfg, "mfcc"), m));
}

void TrainIvectorCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  const gmm::DiagonalGmm ubm = gmm::LoadGmm(Require(cfg, "ubm"));
  ivector::TvOptions o;
  o.rank = Positive(cfg, "rank");
  o.iters = Positive(cfg, "iters");
  o.seed = cfg.GetU64("seed");
  const ivector::TvResult r = ivector::TrainTotalVariability(ubm, StatsFor(cfg, ubm, m), o);
  const std::string out = Require(cfg, "out");
  Sink::EnsureParent(out);
  ivector::SaveTv(out, r.model);
  log << "total variability: rank " << o.rank << ", " << o.iters << " iterations\n";
}

void EmbedCmd(const RunConfig &cfg, std::ostream &stdout_, std::ostream &log) {
  const std::string method = Choice(cfg, "method", {"ivector", "cnn"});
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  std::vector<Vector> vecs;
  if (method == "ivector") {
    const gmm::DiagonalGmm ubm = gmm::LoadGmm(Require(cfg, "ubm"));
    const ivector::TotalVariabilityModel tv = ivector::LoadTv(Require(cfg, "tv"));
    vecs = ivector::ExtractIvectors(tv, StatsFor(cfg, ubm, m));
  } else {
    nn::Checkpoint ck = nn::LoadCheckpoint(Require(cfg, "checkpoint"));
    const bool siamese = CheckpointInfo(ck)["mode"] == "siamese";
    const std::string dir = FeatureDir(cfg, "spectrogram");
    for (const auto &r : m) {
      const Spectrogram s{ReadFeatureFile(FeaturePath(dir, r.utterance_id))};
      vecs.push_back(siamese ? nn::Embed(ck.net, s) : Vector(nn::Fc7Activations(ck.net, s)));
    }
  }
  Sink sink(cfg.Get("out"), stdout_);
  WriteVectors(sink.os(), m, vecs);
  log << "embedded " << m.size() << " utterances with " << method << '\n';
}

void TrainPldaCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  const auto vecs = LoadVectors(Require(cfg, "vectors"));
  const auto labels = Labels(m, ClassIndex(corpus::PoiIds(m)));
  std::vector<Vector> x;
  for (const auto &r : m) x.push_back(Lookup(vecs, r.utterance_id));
  ivector::PldaOptions o;
  o.out_dim = Positive(cfg, "dim");
  o.iters = Positive(cfg, "iters");
  o.lda = cfg.GetBool("lda");
  o.length_norm = cfg.GetBool("length_norm");
  std::vector<double> history;
  const ivector::PldaModel model = ivector::TrainPlda(x, labels, o, &history);
  const std::string out = Require(cfg, "out");
  Sink::EnsureParent(out);
  ivector::SavePlda(out, model);
  log << "plda: dim " << model.OutputDim();
  if (!history.empty()) log << ", log-likelihood " << history.back();
  log << '\n';
}

void TrainSvmCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  const auto vecs = LoadVectors(Require(cfg, "vectors"));
  const auto idx = ClassIndex(corpus::PoiIds(m));
  const Matrix x = StackRows(vecs, m, true);
  Matrix vx(0, x.cols());
  std::vector<int> vy;
  if (!cfg.Get("validation_manifest").empty()) {
    const Manifest v = corpus::LoadManifest(cfg.Get("validation_manifest"));
    vx = StackRows(vecs, v, true);
    vy = Labels(v, idx);
  }
  ivector::SvmOptions o;
  o.c_grid = cfg.GetDoubleList("c_grid");
  o.epochs = Positive(cfg, "epochs");
  ivector::SvmReport report;
  const ivector::LinearSvm svm = ivector::TrainOvrSvm(x, Labels(m, idx), vx, vy, o, &report);
  const std::string out = Require(cfg, "out");
  Sink::EnsureParent(out);
  ivector::SaveSvm(out, svm);
  log << "svm: " << svm.NumClasses() << " classes, C=" << report.chosen_c << '\n';
}

nn::CnnConfig CnnFromConfig(const RunConfig &cfg, int outputs) {
  nn::CnnConfig c;
  c.conv1 = Positive(cfg, "conv1");
  c.conv2 = Positive(cfg, "conv2");
  c.conv3 = Positive(cfg, "conv3");
  c.conv4 = Positive(cfg, "conv4");
  c.conv5 = Positive(cfg, "conv5");
  c.fc6 = Positive(cfg, "fc6");
  c.fc7 = Positive(cfg, "fc7");
  c.outputs = outputs;
  c.seed = cfg.GetU64("seed");
  return c;
}

void TrainCnnCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const std::string mode = Choice(cfg, "mode", {"classify", "siamese"});
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  const std::vector<std::string> classes = corpus::PoiIds(m);
  if (classes.size() < 2) Fail(ErrorKind::kInsufficientData, "training needs at least two POIs");
  const auto labels = Labels(m, ClassIndex(classes));
  const auto specs = LoadSpectrograms(FeatureDir(cfg, "spectrogram"), m);
  std::ostringstream info;
  info << "mode=" << mode << "\nclasses=" << Join(classes) << '\n';
  nn::Network net;
  if (mode == "classify") {
    net = nn::BuildCnn(CnnFromConfig(cfg, static_cast<int>(classes.size())));
    nn::TrainHyper h;
    h.lr = cfg.GetDouble("lr");
    h.batch_size = Positive(cfg, "batch_size");
    h.epochs = Positive(cfg, "epochs");
    h.seed = cfg.GetU64("seed");
    const nn::TrainHistory hist = nn::TrainClassifier(&net, specs, labels, h);
    for (size_t e = 0; e < hist.epoch_loss.size(); ++e)
      log << "epoch " << e + 1 << " loss " << hist.epoch_loss[e] << " lr " << hist.lr[e] << '\n';
    info << h.ToKeyValue();
  } else {
    nn::Checkpoint init = nn::LoadCheckpoint(Require(cfg, "init"));
    net = nn::MakeEmbeddingNet(init.net, Positive(cfg, "embed_dim"), cfg.GetU64("seed"));
    nn::SiameseHyper h;
    h.lr = cfg.GetDouble("lr");
    h.margin = cfg.GetDouble("margin");
    h.pairs_per_step = Positive(cfg, "pairs_per_step");
    h.steps_per_epoch = Positive(cfg, "steps_per_epoch");
    h.epochs = Positive(cfg, "epochs");
    h.seed = cfg.GetU64("seed");
    const nn::SiameseHistory hist = nn::TrainSiamese(&net, specs, labels, h);
    for (size_t e = 0; e < hist.epoch_loss.size(); ++e)
      log << "epoch " << e + 1 << " contrastive loss " << hist.epoch_loss[e] << '\n';
    info << "margin=" << h.margin << "\nepochs=" << h.epochs << "\nseed=" << h.seed << '\n';
  }
  const std::string out = Require(cfg, "out");
  Sink::EnsureParent(out);
  nn::SaveCheckpoint(out, net, info.str());
  log << "saved " << out << '\n';
}

void SplitCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const std::string protocol = Choice(cfg, "protocol", {"identification", "verification"});
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  const corpus::Split s = protocol == "identification" ? corpus::IdentificationSplit(m) : corpus::VerificationSplit(m);
  const std::string out = Require(cfg, "out");
  fs::create_directories(out);
  corpus::SaveManifest((fs::path(out) / "dev.jsonl").string(), s.dev);
  corpus::SaveManifest((fs::path(out) / "test.jsonl").string(), s.test);
  log << protocol << " split: " << s.dev.size() << " dev, " << s.test.size() << " test\n";
}

void TrialsCmd(const RunConfig &cfg, std::ostream &stdout_, std::ostream &log) {
  const int pos = cfg.GetInt("pos"), neg = cfg.GetInt("neg");
  const auto trials = eval::BuildTrials(corpus::LoadManifest(Require(cfg, "manifest")), pos, neg, cfg.GetU64("seed"));
  Sink sink(cfg.Get("out"), stdout_);
  eval::WriteTrials(sink.os(), trials);
  log << trials.size() << " trials\n";
}

void ScoreCmd(const RunConfig &cfg, std::ostream &stdout_, std::ostream &log) {
  const std::string method = Choice(cfg, "method", {"cosine", "plda"});
  std::ifstream ts(Require(cfg, "trials"));
  if (!ts) Fail(ErrorKind::kIo, "cannot open " + cfg.Get("trials"));
  const auto trials = eval::ReadTrials(ts);
  const auto vecs = LoadVectors(Require(cfg, "vectors"));
  ivector::PldaModel plda;
  if (method == "plda") plda = ivector::LoadPlda(Require(cfg, "plda"));
  std::vector<eval::ScoreLine> lines;
  for (const auto &t : trials) {
    const Vector &a = Lookup(vecs, t.enroll), &b = Lookup(vecs, t.test);
    if (a.size() != b.size()) Fail(ErrorKind::kModelMismatch, "vector dimensions differ");
    const double s = method == "cosine" ? nn::CosineSimilarity(a, b) : ivector::PldaScore(plda, a, b);
    lines.push_back({t.enroll, t.test, s, t.target});
  }
  Sink sink(cfg.Get("out"), stdout_);
  eval::WriteScores(sink.os(), lines);
  log << "scored " << lines.size() << " trials with " << method << '\n';
}

void EvalIdCmd(const RunConfig &cfg, std::ostream &stdout_, std::ostream &log) {
  const std::string method = Choice(cfg, "method", {"svm", "cnn"});
  const Manifest test = corpus::LoadManifest(Require(cfg, "manifest"));
  if (test.empty()) Fail(ErrorKind::kInsufficientData, "empty test manifest");
  Matrix scores;
  std::vector<int> labels;
  if (method == "svm") {
    const ivector::LinearSvm svm = ivector::LoadSvm(Require(cfg, "svm"));
    const auto classes = corpus::PoiIds(corpus::LoadManifest(Require(cfg, "train_manifest")));
    if (static_cast<int>(classes.size()) != svm.NumClasses())
      Fail(ErrorKind::kModelMismatch, "training manifest has " + std::to_string(classes.size()) +
                                          " POIs, model has " + std::to_string(svm.NumClasses()));
    labels = Labels(test, ClassIndex(classes));
    const Matrix x = StackRows(LoadVectors(Require(cfg, "vectors")), test, true);
    scores.resize(x.rows(), svm.NumClasses());
    for (Eigen::Index i = 0; i < x.rows(); ++i) scores.row(i) = ivector::SvmScores(svm, x.row(i).transpose()).transpose();
  } else {
    const std::string pooling = Choice(cfg, "pooling", {"apool", "segments"});
    nn::Checkpoint ck = nn::LoadCheckpoint(Require(cfg, "checkpoint"));
    auto info = CheckpointInfo(ck);
    if (info["mode"] != "classify") Fail(ErrorKind::kModelMismatch, "checkpoint is not a classifier");
    const auto classes = Split(info["classes"]);
    if (static_cast<int>(classes.size()) != ck.net.OutputDim())
      Fail(ErrorKind::kModelMismatch, "checkpoint class list does not match its output layer");
    labels = Labels(test, ClassIndex(classes));
    const std::string dir = FeatureDir(cfg, "spectrogram");
    scores.resize(static_cast<Eigen::Index>(test.size()), ck.net.OutputDim());
    for (size_t i = 0; i < test.size(); ++i) {
      const Spectrogram s{ReadFeatureFile(FeaturePath(dir, test[i].utterance_id))};
      const Vector p = pooling == "apool" ? nn::InferIdentity(ck.net, s) : nn::InferSegmentsAvg(ck.net, s);
      scores.row(static_cast<Eigen::Index>(i)) = p.transpose();
    }
  }
  Sink sink(cfg.Get("out"), stdout_);
  sink.os() << "top1=" << eval::TopKAccuracy(scores, labels, 1) << '\n'
            << "top5=" << eval::TopKAccuracy(scores, labels, std::min<int>(5, static_cast<int>(scores.cols()))) << '\n';
  log << "identified " << test.size() << " utterances\n";
}

void EvalVerCmd(const RunConfig &cfg, std::ostream &stdout_, std::ostream &) {
  const eval::ScoreSet ss = eval::ToScoreSet(eval::LoadScores(Require(cfg, "scores")));
  eval::DcfParams p;
  p.c_miss = cfg.GetDouble("c_miss");
  p.c_fa = cfg.GetDouble("c_fa");
  p.p_tar = cfg.GetDouble("p_target");
  const eval::MinDcf d = eval::ComputeMinDcf(ss, p);
  Sink sink(cfg.Get("out"), stdout_);
  sink.os() << "eer=" << eval::Eer(ss) << '\n' << "min_dcf=" << d.normalized << '\n' << "min_dcf_raw=" << d.raw << '\n';
}

void CurateCmd(const RunConfig &cfg, std::ostream &, std::ostream &log) {
  const std::string list = Require(cfg, "streams");
  std::ifstream is(list);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + list);
  const fs::path base = fs::path(list).parent_path();
  std::vector<curation::StreamInput> inputs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    curation::StreamInput in;
    fs::path stream;
    try {
      const auto j = nlohmann::json::parse(line);
      stream = j.at("stream").get<std::string>();
      in.poi_id = j.at("poi_id").get<std::string>();
      in.poi_name = j.at("poi_name").get<std::string>();
      in.gender = j.at("gender").get<std::string>();
      in.nationality = j.value("nationality", std::string());
      in.audio_path = j.at("audio_path").get<std::string>();
    } catch (const nlohmann::json::exception &e) {
      Fail(ErrorKind::kIo, list + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (stream.is_relative()) stream = base / stream;
    in.stream = curation::LoadFrameStream(stream.string());
    inputs.push_back(std::move(in));
  }
  curation::CurationConfig c;
  c.shot_threshold = cfg.GetDouble("shot_threshold");
  c.tracker.iou_min = cfg.GetDouble("iou_min");
  c.tracker.gap_max = cfg.GetInt("gap_max");
  c.tracker.require_landmarks = cfg.GetBool("require_landmarks");
  c.sync_window = Positive(cfg, "sync_window");
  c.sync_threshold = cfg.GetDouble("sync_threshold");
  c.identity_threshold = cfg.GetDouble("identity_threshold");
  c.fps = cfg.GetDouble("fps");
  const curation::CurationResult r = curation::Curate(inputs, c);
  const std::string out = Require(cfg, "out");
  Sink::EnsureParent(out);
  corpus::AppendManifest(out, r.ToManifest());
  for (const auto &e : r.errors) log << "skipped stream: " << e << '\n';
  log << "appended " << r.utterances.size() << " utterances to " << out << '\n';
  if (!r.errors.empty())
    Fail(ErrorKind::kInvalidInput, std::to_string(r.errors.size()) + " stream(s) failed validation");
}

void StatsCmd(const RunConfig &cfg, std::ostream &stdout_, std::ostream &) {
  const Manifest m = corpus::LoadManifest(Require(cfg, "manifest"));
  Sink sink(cfg.Get("out"), stdout_);
  corpus::WriteCorpusStats(sink.os(), corpus::ComputeCorpusStats(m));
}

const std::string kManifest = "{data_dir}/corpus/manifest.jsonl";

std::vector<KeySpec> CnnWidthKeys() {
  return {{"conv1", "16", "conv1 filters"},       {"conv2", "32", "conv2 filters"},
          {"conv3", "48", "conv3 filters"},       {"conv4", "32", "conv4 filters"},
          {"conv5", "32", "conv5 filters"},       {"fc6", "128", "fc6 width"},
          {"fc7", "128", "fc7 width"}};
}

std::vector<Command> Build() {
  std::vector<Command> c;
  c.push_back({"synth-data",
               "generate a seeded synthetic corpus (WAV files + manifest.jsonl)",
               {{"speakers", "10", "number of POIs"},
                {"videos", "4", "videos per POI"},
                {"utterances", "5", "utterances per video"},
                {"min_duration", "3", "shortest utterance in seconds"},
                {"max_duration", "8", "longest utterance in seconds"},
                {"out", "{data_dir}/corpus", "corpus root directory"}},
               SynthData});
  c.push_back({"extract-features",
               "compute per-utterance features into <out>/<utterance>.vxf",
               {{"manifest", kManifest, "input manifest; relative audio paths resolve against its directory"},
                {"kind", "mfcc", "spectrogram (normalised) or mfcc (with CMVN)"},
                {"out", "", "output directory (default <data_dir>/feats/<kind>)"}},
               ExtractFeatures});
  c.push_back({"train-ubm",
               "train a diagonal-covariance GMM background model on MFCC features",
               {{"manifest", kManifest, "training manifest"},
                {"feats", "", "MFCC directory (default <data_dir>/feats/mfcc)"},
                {"components", "64", "mixture components"},
                {"iters", "10", "EM iterations"},
                {"init_frames", "100000", "frames sampled for k-means initialisation"},
                {"out", "{data_dir}/models/ubm.gmm", "output model"}},
               TrainUbmCmd});
  c.push_back({"train-ivector",
               "train the total variability matrix",
               {{"manifest", kManifest, "training manifest"},
                {"feats", "", "MFCC directory (default <data_dir>/feats/mfcc)"},
                {"ubm", "{data_dir}/models/ubm.gmm", "background model"},
                {"rank", "100", "i-vector dimension"},
                {"iters", "5", "EM iterations"},
                {"out", "{data_dir}/models/tv.mdl", "output model"}},
               TrainIvectorCmd});
  c.push_back({"train-plda",
               "train a PLDA backend on utterance vectors",
               {{"manifest", kManifest, "training manifest (labels from poi_id)"},
                {"vectors", "{data_dir}/vectors.txt", "vectors file from embed"},
                {"dim", "50", "LDA output dimension"},
                {"iters", "10", "EM iterations"},
                {"lda", "true", "apply LDA before PLDA"},
                {"length_norm", "true", "length-normalise vectors"},
                {"out", "{data_dir}/models/plda.mdl", "output model"}},
               TrainPldaCmd});
  c.push_back({"train-svm",
               "train one-vs-rest linear SVMs on L2-normalised vectors",
               {{"manifest", kManifest, "training manifest; class order is first appearance of poi_id"},
                {"vectors", "{data_dir}/vectors.txt", "vectors file from embed"},
                {"validation_manifest", "", "manifest used to pick C (required for more than one C)"},
                {"c_grid", "0.1,1,10,100", "comma-separated C values"},
                {"epochs", "200", "subgradient epochs"},
                {"out", "{data_dir}/models/svm.mdl", "output model"}},
               TrainSvmCmd});
  std::vector<KeySpec> cnn = {
      {"mode", "classify", "classify (softmax training) or siamese (contrastive fine-tuning)"},
      {"manifest", kManifest, "training manifest"},
      {"feats", "", "spectrogram directory (default <data_dir>/feats/spectrogram)"},
      {"init", "", "classifier checkpoint to start from (siamese mode)"},
      {"epochs", "20", "training epochs"},
      {"lr", "0.01", "initial learning rate"},
      {"batch_size", "16", "minibatch size (classify mode)"},
      {"embed_dim", "1024", "embedding width (siamese mode)"},
      {"margin", "1.0", "contrastive margin (siamese mode)"},
      {"pairs_per_step", "32", "pairs per step (siamese mode)"},
      {"steps_per_epoch", "20", "steps per epoch (siamese mode)"},
      {"out", "{data_dir}/models/cnn.ckpt", "output checkpoint"}};
  for (auto &k : CnnWidthKeys()) cnn.push_back(k);
  c.push_back({"train-cnn", "train the CNN classifier or its siamese embedding", cnn, TrainCnnCmd});
  c.push_back({"embed",
               "write one vector per utterance: <utterance> v1 ... vn",
               {{"method", "ivector", "ivector or cnn"},
                {"manifest", kManifest, "utterances to embed"},
                {"feats", "", "feature directory (default <data_dir>/feats/mfcc or /spectrogram)"},
                {"ubm", "{data_dir}/models/ubm.gmm", "background model (ivector)"},
                {"tv", "{data_dir}/models/tv.mdl", "total variability model (ivector)"},
                {"checkpoint", "{data_dir}/models/cnn.ckpt", "CNN checkpoint (cnn); fc7 for classifiers"},
                {"out", "", "output file (default standard output)"}},
               EmbedCmd});
  c.push_back({"split",
               "write dev.jsonl and test.jsonl for a protocol",
               {{"protocol", "identification", "identification or verification"},
                {"manifest", kManifest, "input manifest"},
                {"out", "{data_dir}/split", "output directory"}},
               SplitCmd});
  c.push_back({"trials",
               "draw a seeded verification trial list from a test manifest",
               {{"manifest", "{data_dir}/split/test.jsonl", "test manifest"},
                {"pos", "10", "target trials per POI"},
                {"neg", "10", "non-target trials per POI"},
                {"out", "", "output file (default standard output)"}},
               TrialsCmd});
  c.push_back({"score",
               "score a trial list",
               {{"method", "cosine", "cosine or plda"},
                {"trials", "{data_dir}/trials.txt", "trial list"},
                {"vectors", "{data_dir}/vectors.txt", "vectors file from embed"},
                {"plda", "{data_dir}/models/plda.mdl", "PLDA model (plda)"},
                {"out", "", "output file (default standard output)"}},
               ScoreCmd});
  c.push_back({"eval-id",
               "top-1 and top-5 identification accuracy",
               {{"method", "svm", "svm or cnn"},
                {"manifest", "{data_dir}/split/test.jsonl", "test manifest"},
                {"train_manifest", "{data_dir}/split/dev.jsonl", "training manifest giving the class order (svm)"},
                {"vectors", "{data_dir}/vectors.txt", "vectors file (svm)"},
                {"svm", "{data_dir}/models/svm.mdl", "SVM model (svm)"},
                {"checkpoint", "{data_dir}/models/cnn.ckpt", "classifier checkpoint (cnn)"},
                {"pooling", "apool", "apool (whole utterance) or segments (3 s segment average) (cnn)"},
                {"feats", "", "spectrogram directory (default <data_dir>/feats/spectrogram)"},
                {"out", "", "output file (default standard output)"}},
               EvalIdCmd});
  c.push_back({"eval-ver",
               "EER and minimum detection cost of a score file",
               {{"scores", "{data_dir}/scores.txt", "score file"},
                {"p_target", "0.01", "target prior"},
                {"c_miss", "1", "miss cost"},
                {"c_fa", "1", "false-alarm cost"},
                {"out", "", "output file (default standard output)"}},
               EvalVerCmd});
  c.push_back({"curate",
               "run the curation pipeline over frame streams and append to a manifest",
               {{"streams", "{data_dir}/streams.jsonl",
                 "JSONL list: stream, poi_id, poi_name, gender, nationality, audio_path"},
                {"shot_threshold", "0.5", "histogram distance marking a cut"},
                {"iou_min", "0.5", "minimum IOU to extend a track"},
                {"gap_max", "10", "largest frame gap bridged by a track"},
                {"require_landmarks", "false", "drop detections without landmarks"},
                {"sync_window", "25", "frames per active-speaker window"},
                {"sync_threshold", "0.5", "active-speaker threshold"},
                {"identity_threshold", "0.9", "identity threshold"},
                {"fps", "25", "frame rate"},
                {"out", "{data_dir}/curated.jsonl", "manifest to append to"}},
               CurateCmd});
  c.push_back({"stats",
               "corpus statistics as key=max/avg/min",
               {{"manifest", kManifest, "input manifest"}, {"out", "", "output file (default standard output)"}},
               StatsCmd});
  return c;
}

}  // namespace

const std::vector<Command> &Commands() {
  static const std::vector<Command> commands = Build();
  return commands;
}

}  // namespace voxkit::cli
