// tests/test_core.cc
//
// Manifest format, duration accounting, time-axis utilities.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cstk/core/concat.h"
#include "cstk/core/embedding_file.h"
#include "cstk/core/manifest.h"
#include "cstk/util/rng.h"
#include "doctest.h"
#include "testing/generators.h"
#include "testing/tmpdir.h"

using namespace cstk;
using cstk::testing::TmpDir;

namespace {

std::string ReadFileText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFileText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

ArchiveManifest TwoRecordingManifest() {
  ArchiveManifest m;
  m.AddRecording({"rec_a", 12000, 100, {{"year", "1975"}}});
  m.AddRecording({"rec_b", 6000, 100, {}});
  Segment s;
  s.recording_id = "rec_a";
  s.span = TimeSpan(100, 1100);
  s.source = Source::kSad;
  m.Track(Layer::kSpeech).Add(s);
  s.recording_id = "rec_b";
  s.span = TimeSpan(0, 500);
  m.Track(Layer::kSpeech).Add(s);
  m.Finalize();
  return m;
}

}  // namespace

TEST_CASE("manifest: two-recording round trip") {
  TmpDir tmp;
  const ArchiveManifest m = TwoRecordingManifest();
  const std::string path = tmp.Path("a.tsv");
  SaveManifest(m, path);
  const ArchiveManifest loaded = LoadManifest(path);
  CHECK(loaded.recordings.size() == 2);
  CHECK(loaded == m);
  // Saving again is byte-identical.
  const std::string path2 = tmp.Path("b.tsv");
  SaveManifest(loaded, path2);
  CHECK(ReadFileText(path) == ReadFileText(path2));
}

TEST_CASE("manifest: empty archive round trips to header only") {
  TmpDir tmp;
  ArchiveManifest m;
  const std::string path = tmp.Path("empty.tsv");
  SaveManifest(m, path);
  const std::string text = ReadFileText(path);
  CHECK(text == "#CSTK-MANIFEST\t1\n#languages\tfy\tnl\n");
  CHECK(LoadManifest(path) == m);
}

TEST_CASE("manifest: segment with end <= start is rejected with line number") {
  TmpDir tmp;
  const std::string path = tmp.Path("bad.tsv");
  SaveManifest(TwoRecordingManifest(), path);
  std::string text = ReadFileText(path);
  // Corrupt the first segment line: swap start/end.
  const std::string good = "rec_a\tspeech\t100\t1100";
  const std::string bad = "rec_a\tspeech\t1100\t100";
  const size_t pos = text.find(good);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, good.size(), bad);
  WriteFileText(path, text);
  CHECK_THROWS_WITH_AS(LoadManifest(path),
                       doctest::Contains("line 5"), Error);
}

TEST_CASE("manifest: perturbed totals are rejected") {
  TmpDir tmp;
  ArchiveManifest m = TwoRecordingManifest();
  Segment lang;
  lang.recording_id = "rec_a";
  lang.span = TimeSpan(100, 1100);
  lang.language = LanguageTag::kL1;
  lang.source = Source::kLr;
  m.Track(Layer::kLanguage).Add(lang);
  m.Finalize();
  const std::string path = tmp.Path("totals.tsv");
  SaveManifest(m, path);
  std::string text = ReadFileText(path);
  const size_t pos = text.find("#totals\tfy\t");
  REQUIRE(pos != std::string::npos);
  const size_t value_at = pos + std::string("#totals\tfy\t").size();
  text.insert(value_at, "1");  // perturb the stored L1 hours
  WriteFileText(path, text);
  CHECK_THROWS_WITH_AS(LoadManifest(path),
                       doctest::Contains("totals disagree"), Error);
}

TEST_CASE("manifest: 382 reference speakers appear in the inventory") {
  TmpDir tmp;
  ArchiveManifest m;
  m.AddRecording({"rec", 400000, 100, {}});
  for (uint32_t i = 0; i < 382; ++i) {
    Segment s;
    s.recording_id = "rec";
    s.span = TimeSpan(i * 1000, i * 1000 + 900);
    s.speaker = LabelId::Reference(i);
    s.source = Source::kManual;
    m.Track(Layer::kSpeaker).Add(s);
  }
  m.Finalize();
  const std::string path = tmp.Path("speakers.tsv");
  SaveManifest(m, path);
  const std::string text = ReadFileText(path);
  size_t count = 0, pos = 0;
  while ((pos = text.find("#speaker\t", pos)) != std::string::npos) {
    ++count;
    pos += 1;
  }
  CHECK(count == 382);
  CHECK(LoadManifest(path).speakers.size() == 382);
}

TEST_CASE("manifest: seeded random manifests round trip exactly") {
  TmpDir tmp;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const ArchiveManifest m = cstk::testing::RandomManifest(seed);
    const std::string path = tmp.Path("m" + std::to_string(seed) + ".tsv");
    SaveManifest(m, path);
    const ArchiveManifest loaded = LoadManifest(path);
    REQUIRE(loaded == m);
  }
}

TEST_CASE("duration totals: paper-shaped 77.0/60.0 accounting") {
  ArchiveManifest m;
  // 77.0 h of L1 and 60.0 h of L2 across two long recordings.
  const Frames l1_frames = FramesFromSeconds(77.0 * 3600, 100);
  const Frames l2_frames = FramesFromSeconds(60.0 * 3600, 100);
  m.AddRecording({"r1", l1_frames, 100, {}});
  m.AddRecording({"r2", l2_frames, 100, {}});
  Segment s;
  s.recording_id = "r1";
  s.span = TimeSpan(0, l1_frames);
  s.language = LanguageTag::kL1;
  s.source = Source::kLr;
  m.Track(Layer::kLanguage).Add(s);
  s.recording_id = "r2";
  s.span = TimeSpan(0, l2_frames);
  s.language = LanguageTag::kL2;
  m.Track(Layer::kLanguage).Add(s);
  m.Finalize();
  const auto totals = DurationTotals(m, Layer::kLanguage);
  CHECK(totals[0] == doctest::Approx(77.0).epsilon(1e-9));
  CHECK(totals[1] == doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("duration totals: single 10 s L1 segment") {
  ArchiveManifest m;
  m.AddRecording({"r", 2000, 100, {}});
  Segment s;
  s.recording_id = "r";
  s.span = TimeSpan(0, 1000);
  s.language = LanguageTag::kL1;
  m.Track(Layer::kLanguage).Add(s);
  m.Finalize();
  const auto totals = DurationTotals(m, Layer::kLanguage);
  CHECK(totals[0] == doctest::Approx(10.0 / 3600.0).epsilon(1e-12));
  CHECK(totals[1] == 0.0);
}

TEST_CASE("duration totals: untagged segment is an error") {
  ArchiveManifest m;
  m.AddRecording({"r", 2000, 100, {}});
  Segment s;
  s.recording_id = "r";
  s.span = TimeSpan(0, 1000);
  s.transcript = TaggedTranscript{{TaggedWord("hoi", LanguageTag::kL1)}};
  m.Track(Layer::kTranscript).Add(s);
  m.Finalize();
  CHECK_THROWS_AS(DurationTotals(m, Layer::kTranscript), Error);
}

TEST_CASE("duration totals: 1000-segment archive matches brute-force sum") {
  Rng rng(7);
  ArchiveManifest m;
  m.AddRecording({"r", 4000000, 100, {}});
  double expect_l1 = 0.0, expect_l2 = 0.0;
  Frames at = 0;
  for (int i = 0; i < 1000; ++i) {
    const Frames len = 50 + static_cast<Frames>(rng.UniformInt(500));
    Segment s;
    s.recording_id = "r";
    s.span = TimeSpan(at, at + len);
    s.language = rng.Bernoulli(0.5) ? LanguageTag::kL1 : LanguageTag::kL2;
    (s.language == LanguageTag::kL1 ? expect_l1 : expect_l2) +=
        static_cast<double>(len);
    m.Track(Layer::kLanguage).Add(s);
    at += len + 10;
  }
  m.Finalize();
  const auto totals = DurationTotals(m, Layer::kLanguage);
  CHECK(totals[0] * 360000.0 == doctest::Approx(expect_l1).epsilon(1e-9));
  CHECK(totals[1] * 360000.0 == doctest::Approx(expect_l2).epsilon(1e-9));
}

TEST_CASE("track: merging adjacent segments preserves total duration") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ArchiveManifest m = cstk::testing::RandomManifest(seed);
    SegmentTrack& track = m.Track(Layer::kSpeech);
    const Frames before = track.TotalFrames();
    track.MergeAdjacent();
    CHECK(track.TotalFrames() == before);
    ValidateTrack(track, Layer::kSpeech);
  }
}

TEST_CASE("concat: single span [2,5] maps virtual 0 to original 2 s") {
  ConcatenatedSpeech cs("r", {TimeSpan(200, 500)});
  CHECK(cs.TotalFrames() == 300);
  CHECK(cs.ToOriginal(0) == 200);
  CHECK(cs.ToVirtual(200) == 0);
}

TEST_CASE("concat: [0,2],[4,6] maps virtual 3 s to original 5 s") {
  ConcatenatedSpeech cs("r", {TimeSpan(0, 200), TimeSpan(400, 600)});
  CHECK(cs.TotalFrames() == 400);
  CHECK(cs.ToOriginal(300) == 500);
  CHECK(cs.ToVirtual(500) == 300);
}

TEST_CASE("concat: map-then-invert is the identity on sampled points") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TimeSpan> spans;
    Frames at = static_cast<Frames>(rng.UniformInt(100));
    for (int i = 0; i < 10; ++i) {
      const Frames len = 1 + static_cast<Frames>(rng.UniformInt(400));
      spans.emplace_back(at, at + len);
      at += len + 1 + static_cast<Frames>(rng.UniformInt(200));
    }
    ConcatenatedSpeech cs("r", spans);
    for (int k = 0; k < 50; ++k) {
      const Frames v =
          static_cast<Frames>(rng.UniformInt(cs.TotalFrames()));
      CHECK(cs.ToVirtual(cs.ToOriginal(v)) == v);
    }
  }
}

TEST_CASE("concat: virtual spans split at gaps and preserve duration") {
  ConcatenatedSpeech cs("r", {TimeSpan(0, 200), TimeSpan(400, 600)});
  const auto spans = cs.ToOriginalSpans(TimeSpan(100, 300));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == TimeSpan(100, 200));
  CHECK(spans[1] == TimeSpan(400, 500));
  CHECK(cs.CoveringOriginalSpan(TimeSpan(100, 300)) == TimeSpan(100, 500));
}

TEST_CASE("embedding file: round trip") {
  TmpDir tmp;
  Rng rng(3);
  EmbeddingFile file(8);
  for (int i = 0; i < 40; ++i) {
    std::vector<double> v(8);
    for (double& x : v) x = rng.Gaussian();
    file.Append({"rec" + std::to_string(i % 3),
                 TimeSpan(i * 100, i * 100 + 200)},
                v);
  }
  const std::string path = tmp.Path("e.emb");
  WriteEmbeddingFile(file, path);
  const EmbeddingFile loaded = ReadEmbeddingFile(path);
  CHECK(loaded == file);
}

TEST_CASE("embedding file: dimension mismatch rejected") {
  EmbeddingFile file(4);
  std::vector<double> v(3, 0.0);
  CHECK_THROWS_AS(file.Append({"r", TimeSpan(0, 1)}, v), Error);
}
