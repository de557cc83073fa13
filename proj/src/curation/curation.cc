// src/curation/curation.cc

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

#include "voxkit/curation/curation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include <json.hpp>

#include "voxkit/common.h"

namespace voxkit::curation {

using nlohmann::json;

namespace {

// Mean shifted by the first value: exact for constant input.
double ShiftedMean(const double *x, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += x[i] - x[0];
  return x[0] + acc / static_cast<double>(n);
}

std::vector<double> Normalized(const std::vector<double> &h) {
  double sum = 0.0;
  for (double v : h) sum += v;
  std::vector<double> out(h.size(), 0.0);
  if (sum > 0.0)
    for (size_t i = 0; i < h.size(); ++i) out[i] = h[i] / sum;
  return out;
}

}  // namespace

double Iou(const Box &a, const Box &b) {
  const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

void ValidateStream(const FrameStream &s) {
  const std::string where = s.video_id.empty() ? "stream" : "stream " + s.video_id;
  for (size_t i = 0; i < s.frames.size(); ++i) {
    const Frame &f = s.frames[i];
    if (i > 0 && f.frame_idx <= s.frames[i - 1].frame_idx)
      Fail(ErrorKind::kInvalidInput, where + ": frame_idx not strictly increasing at " + std::to_string(f.frame_idx));
    if (f.color_histogram.size() != s.frames[0].color_histogram.size())
      Fail(ErrorKind::kInvalidInput, where + ": histogram length changes at frame " + std::to_string(f.frame_idx));
    for (double v : f.color_histogram)
      if (!(v >= 0.0)) Fail(ErrorKind::kInvalidInput, where + ": negative histogram entry at frame " + std::to_string(f.frame_idx));
    for (const auto &d : f.detections)
      if (!(d.box.w > 0.0) || !(d.box.h > 0.0))
        Fail(ErrorKind::kInvalidInput, where + ": empty box at frame " + std::to_string(f.frame_idx));
  }
}

FrameStream ReadFrameStream(std::istream &is, const std::string &video_id) {
  FrameStream s;
  s.video_id = video_id;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      Frame f;
      f.frame_idx = j.at("frame_idx").get<int64_t>();
      f.color_histogram = j.at("color_histogram").get<std::vector<double>>();
      for (const auto &d : j.value("detections", json::array())) {
        Detection det;
        const auto box = d.at("box").get<std::vector<double>>();
        if (box.size() != 4) Fail(ErrorKind::kIo, "box needs four numbers on line " + std::to_string(lineno));
        det.box = {box[0], box[1], box[2], box[3]};
        det.landmark_ok = d.value("landmark_ok", true);
        det.identity_score = d.at("identity_score").get<double>();
        det.sync_score = d.at("sync_score").get<double>();
        f.detections.push_back(det);
      }
      s.frames.push_back(std::move(f));
    } catch (const json::exception &e) {
      Fail(ErrorKind::kIo, "frame stream line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return s;
}

FrameStream LoadFrameStream(const std::string &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadFrameStream(is, std::filesystem::path(path).stem().string());
}

void WriteFrameStream(std::ostream &os, const FrameStream &s) {
  for (const auto &f : s.frames) {
    json dets = json::array();
    for (const auto &d : f.detections)
      dets.push_back({{"box", {d.box.x, d.box.y, d.box.w, d.box.h}},
                      {"landmark_ok", d.landmark_ok},
                      {"identity_score", d.identity_score},
                      {"sync_score", d.sync_score}});
    os << json{{"frame_idx", f.frame_idx}, {"color_histogram", f.color_histogram}, {"detections", dets}}.dump()
       << '\n';
  }
  if (!os) Fail(ErrorKind::kIo, "failed writing frame stream");
}

std::vector<int64_t> DetectShotBoundaries(const FrameStream &s, double threshold) {
  if (s.frames.empty()) Fail(ErrorKind::kInvalidInput, "shot detection needs at least one frame");
  std::vector<int64_t> out;
  std::vector<double> prev = Normalized(s.frames[0].color_histogram);
  for (size_t i = 1; i < s.frames.size(); ++i) {
    if (s.frames[i].color_histogram.size() != prev.size())
      Fail(ErrorKind::kInvalidInput, "histogram length mismatch at frame " + std::to_string(s.frames[i].frame_idx));
    std::vector<double> cur = Normalized(s.frames[i].color_histogram);
    double dist = 0.0;
    for (size_t b = 0; b < cur.size(); ++b) dist += std::abs(cur[b] - prev[b]);
    if (dist > threshold) out.push_back(s.frames[i - 1].frame_idx);
    prev = std::move(cur);
  }
  return out;
}

std::vector<Shot> DetectShots(const FrameStream &s, double threshold) {
  const auto cuts = DetectShotBoundaries(s, threshold);
  std::vector<Shot> shots;
  size_t begin = 0, c = 0;
  for (size_t i = 0; i < s.frames.size(); ++i)
    if (c < cuts.size() && s.frames[i].frame_idx == cuts[c]) {
      shots.push_back({begin, i + 1});
      begin = i + 1;
      ++c;
    }
  shots.push_back({begin, s.frames.size()});
  return shots;
}

double FaceTrack::MeanIdentityScore() const {
  if (frames.empty()) Fail(ErrorKind::kInvalidInput, "empty face track");
  std::vector<double> v;
  v.reserve(frames.size());
  for (const auto &f : frames) v.push_back(f.identity_score);
  return ShiftedMean(v.data(), v.size());
}

std::vector<double> FaceTrack::SyncScores() const {
  std::vector<double> v;
  v.reserve(frames.size());
  for (const auto &f : frames) v.push_back(f.sync_score);
  return v;
}

std::vector<FaceTrack> GroupTracks(const FrameStream &s, const Shot &shot, int shot_id, const TrackerOptions &opts) {
  if (shot.begin > shot.end || shot.end > s.frames.size()) Fail(ErrorKind::kInvalidInput, "shot outside the stream");
  std::vector<FaceTrack> tracks;
  for (size_t i = shot.begin; i < shot.end; ++i) {
    const Frame &f = s.frames[i];
    std::vector<const Detection *> dets;
    for (const auto &d : f.detections)
      if (!opts.require_landmarks || d.landmark_ok) dets.push_back(&d);
    // (iou, track, detection) candidates, best IOU first, then earlier track
    std::vector<std::tuple<double, size_t, size_t>> cand;
    for (size_t t = 0; t < tracks.size(); ++t) {
      const TrackFrame &last = tracks[t].frames.back();
      if (f.frame_idx - last.frame_idx - 1 > opts.gap_max) continue;
      for (size_t d = 0; d < dets.size(); ++d) {
        const double iou = Iou(last.box, dets[d]->box);
        if (iou >= opts.iou_min) cand.emplace_back(iou, t, d);
      }
    }
    std::sort(cand.begin(), cand.end(), [](const auto &a, const auto &b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      return std::get<2>(a) < std::get<2>(b);
    });
    std::vector<bool> track_used(tracks.size(), false), det_used(dets.size(), false);
    for (const auto &[iou, t, d] : cand) {
      if (track_used[t] || det_used[d]) continue;
      track_used[t] = det_used[d] = true;
      tracks[t].frames.push_back({f.frame_idx, dets[d]->box, dets[d]->identity_score, dets[d]->sync_score});
    }
    for (size_t d = 0; d < dets.size(); ++d)
      if (!det_used[d]) {
        FaceTrack nt;
        nt.shot_id = shot_id;
        nt.frames.push_back({f.frame_idx, dets[d]->box, dets[d]->identity_score, dets[d]->sync_score});
        tracks.push_back(std::move(nt));
      }
  }
  return tracks;
}

bool VerifyActiveSpeaker(const FaceTrack &track, int window, double threshold) {
  if (window < 1) Fail(ErrorKind::kInvalidInput, "sync window must be positive");
  if (track.Length() < static_cast<size_t>(window))
    Fail(ErrorKind::kInvalidInput, "track of " + std::to_string(track.Length()) + " frames is shorter than the " +
                                       std::to_string(window) + "-frame window");
  const std::vector<double> s = track.SyncScores();
  double best = -INFINITY;
  for (size_t i = 0; i + static_cast<size_t>(window) <= s.size(); ++i)
    best = std::max(best, ShiftedMean(s.data() + i, static_cast<size_t>(window)));
  return best >= threshold;
}

bool VerifyIdentity(const FaceTrack &track, double threshold) { return track.MeanIdentityScore() >= threshold; }

OperatingPoint PrOperatingPoint(const eval::ScoreSet &scores, double target_precision) {
  if (!(target_precision > 0.0) || target_precision > 1.0)
    Fail(ErrorKind::kInvalidInput, "target precision must lie in (0, 1]");
  std::vector<std::pair<double, bool>> sorted;
  size_t positives = 0;
  for (const auto &t : scores) {
    if (!std::isfinite(t.score)) Fail(ErrorKind::kInvalidInput, "non-finite score");
    sorted.emplace_back(t.score, t.target);
    positives += t.target;
  }
  if (positives == 0) Fail(ErrorKind::kInvalidInput, "operating point needs at least one positive");
  std::sort(sorted.begin(), sorted.end());
  // Walk thresholds from the lowest score upward; counts are of trials >= threshold.
  size_t tp = positives, accepted = sorted.size();
  for (size_t i = 0; i < sorted.size();) {
    const double th = sorted[i].first;
    const double precision = static_cast<double>(tp) / static_cast<double>(accepted);
    if (precision >= target_precision)
      return {th, precision, static_cast<double>(tp) / static_cast<double>(positives)};
    for (; i < sorted.size() && sorted[i].first == th; ++i) {
      tp -= sorted[i].second;
      --accepted;
    }
  }
  Fail(ErrorKind::kNoOperatingPoint, "no threshold reaches precision " + std::to_string(target_precision));
}

corpus::Manifest CurationResult::ToManifest() const {
  corpus::Manifest m;
  for (const auto &u : utterances) m.push_back(u.record);
  return m;
}

namespace {

std::vector<CuratedUtterance> CurateStream(const StreamInput &in, const CurationConfig &cfg) {
  const FrameStream &s = in.stream;
  ValidateStream(s);
  std::vector<CuratedUtterance> out;
  if (s.frames.empty()) return out;
  const auto shots = DetectShots(s, cfg.shot_threshold);
  for (size_t sh = 0; sh < shots.size(); ++sh)
    for (const auto &track : GroupTracks(s, shots[sh], static_cast<int>(sh), cfg.tracker)) {
      if (track.Length() < static_cast<size_t>(cfg.sync_window)) continue;
      if (!VerifyActiveSpeaker(track, cfg.sync_window, cfg.sync_threshold)) continue;
      if (!VerifyIdentity(track, cfg.identity_threshold)) continue;
      CuratedUtterance u;
      u.first_frame = track.frames.front().frame_idx;
      u.last_frame = track.frames.back().frame_idx;
      u.start_s = static_cast<double>(u.first_frame) / cfg.fps;
      u.end_s = static_cast<double>(u.last_frame + 1) / cfg.fps;
      char id[64];
      std::snprintf(id, sizeof id, "-f%06lld-%06lld", static_cast<long long>(u.first_frame),
                    static_cast<long long>(u.last_frame));
      u.record.poi_id = in.poi_id;
      u.record.poi_name = in.poi_name;
      u.record.gender = in.gender;
      u.record.nationality = in.nationality;
      u.record.video_id = s.video_id;
      u.record.utterance_id = s.video_id + id;
      u.record.audio_path = in.audio_path;
      u.record.duration_s = u.end_s - u.start_s;
      out.push_back(std::move(u));
    }
  return out;
}

}  // namespace

CurationResult Curate(const std::vector<StreamInput> &streams, const CurationConfig &config) {
  if (!(config.fps > 0.0)) Fail(ErrorKind::kInvalidInput, "fps must be positive");
  if (config.sync_window < 1) Fail(ErrorKind::kInvalidInput, "sync window must be positive");
  std::vector<std::vector<CuratedUtterance>> per(streams.size());
  std::vector<std::string> err(streams.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < streams.size(); ++i) {
    try {
      per[i] = CurateStream(streams[i], config);
    } catch (const std::exception &e) {
      err[i] = streams[i].stream.video_id + ": " + e.what();
    }
  }
  CurationResult r;
  for (size_t i = 0; i < streams.size(); ++i) {
    if (!err[i].empty()) r.errors.push_back(err[i]);
    for (auto &u : per[i]) r.utterances.push_back(std::move(u));
  }
  return r;
}

}  // namespace voxkit::curation
