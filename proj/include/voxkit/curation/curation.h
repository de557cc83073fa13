// include/voxkit/curation/curation.h

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

#ifndef VOXKIT_CURATION_CURATION_H_
#define VOXKIT_CURATION_CURATION_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/corpus/manifest.h"
#include "voxkit/eval/metrics.h"

namespace voxkit::curation {

struct Box {
  double x = 0, y = 0, w = 0, h = 0;
};

double Iou(const Box &a, const Box &b);

struct Detection {
  Box box;
  bool landmark_ok = true;
  double identity_score = 0.0;
  double sync_score = 0.0;
};

struct Frame {
  int64_t frame_idx = 0;
  std::vector<double> color_histogram;
  std::vector<Detection> detections;
};

struct FrameStream {
  std::string video_id;
  std::vector<Frame> frames;
};

/// Throws kInvalidInput unless frame_idx strictly increases, boxes have
/// positive size, histograms are non-negative and share one length.
void ValidateStream(const FrameStream &s);

/// One JSON object per line: frame_idx, color_histogram, detections
/// [{box: [x, y, w, h], landmark_ok, identity_score, sync_score}].
FrameStream ReadFrameStream(std::istream &is, const std::string &video_id);
FrameStream LoadFrameStream(const std::string &path);
void WriteFrameStream(std::ostream &os, const FrameStream &s);

/// Half-open range [begin, end) of positions in FrameStream::frames.
struct Shot {
  size_t begin = 0;
  size_t end = 0;
};

/// frame_idx values t such that a cut lies between t and the next frame:
/// the L1 distance of the sum-normalised histograms exceeds `threshold`.
std::vector<int64_t> DetectShotBoundaries(const FrameStream &s, double threshold = 0.5);
/// The maximal boundary-free runs.
std::vector<Shot> DetectShots(const FrameStream &s, double threshold = 0.5);

struct TrackFrame {
  int64_t frame_idx;
  Box box;
  double identity_score;
  double sync_score;
};

struct FaceTrack {
  int shot_id = 0;
  std::vector<TrackFrame> frames;

  size_t Length() const { return frames.size(); }
  double MeanIdentityScore() const;
  std::vector<double> SyncScores() const;
};

struct TrackerOptions {
  double iou_min = 0.5;
  int gap_max = 10;  // missing frames a track may bridge
  bool require_landmarks = false;
};

/// Greedy IOU association within one shot.  Each frame, candidate
/// (detection, track) pairs with IOU >= iou_min and at most gap_max missing
/// frames are taken best IOU first (ties to the earlier track); unmatched
/// detections open new tracks.
std::vector<FaceTrack> GroupTracks(const FrameStream &s, const Shot &shot, int shot_id,
                                   const TrackerOptions &opts = {});

/// Maximum over sliding `window`-frame means of the sync scores, compared
/// with >=.  kInvalidInput when the track is shorter than the window.
bool VerifyActiveSpeaker(const FaceTrack &track, int window, double threshold);
/// Mean identity score >= threshold.  kInvalidInput for an empty track.
bool VerifyIdentity(const FaceTrack &track, double threshold);

struct OperatingPoint {
  double threshold;
  double precision;
  double recall;
};

/// Smallest score threshold (accept >=) whose precision reaches the
/// target.  kInvalidInput without positives, kNoOperatingPoint when no
/// threshold reaches it.
OperatingPoint PrOperatingPoint(const eval::ScoreSet &scores, double target_precision);

struct CurationConfig {
  double shot_threshold = 0.5;
  TrackerOptions tracker;
  int sync_window = 25;
  double sync_threshold = 0.5;
  double identity_threshold = 0.9;
  double fps = 25.0;
};

struct StreamInput {
  FrameStream stream;
  std::string poi_id;
  std::string poi_name;
  std::string gender;
  std::string nationality;
  std::string audio_path;
};

struct CuratedUtterance {
  corpus::UtteranceRecord record;
  int64_t first_frame;
  int64_t last_frame;
  double start_s;
  double end_s;
};

struct CurationResult {
  std::vector<CuratedUtterance> utterances;
  std::vector<std::string> errors;  // one per skipped stream

  corpus::Manifest ToManifest() const;
};

/// Shots, tracks, active-speaker and identity checks per stream (streams in
/// parallel).  Tracks shorter than the sync window cannot be verified and
/// are dropped.  A stream that fails validation is skipped and reported in
/// `errors`.  Utterance ids are `<video_id>-f<first>-<last>`.
CurationResult Curate(const std::vector<StreamInput> &streams, const CurationConfig &config = {});

}  // namespace voxkit::curation

#endif  // VOXKIT_CURATION_CURATION_H_
