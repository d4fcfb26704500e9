// tests/testing/generators.h
//
// Seeded random inputs for property tests.

#ifndef CSTK_TESTS_TESTING_GENERATORS_H_
#define CSTK_TESTS_TESTING_GENERATORS_H_

#include <string>
#include <vector>

#include "cstk/core/manifest.h"
#include "cstk/core/types.h"
#include "cstk/util/rng.h"

namespace cstk::testing {

inline TaggedTranscript RandomTranscript(Rng& rng, const TimeSpan& span) {
  TaggedTranscript t;
  const int n = 1 + static_cast<int>(rng.UniformInt(6));
  const Frames step = span.Length() / n;
  Frames at = span.start;
  for (int i = 0; i < n; ++i) {
    TaggedWord w;
    w.surface = "w" + std::to_string(rng.UniformInt(500));
    w.language = rng.Bernoulli(0.5) ? LanguageTag::kL1 : LanguageTag::kL2;
    if (step > 0 && rng.Bernoulli(0.8)) {
      const Frames end = (i == n - 1) ? span.end : at + step;
      if (end > at) w.span = TimeSpan(at, end);
      at = end;
    } else {
      at += step;
    }
    t.words.push_back(std::move(w));
  }
  return t;
}

// A structurally valid manifest with random recordings and tracks.
inline ArchiveManifest RandomManifest(uint64_t seed) {
  Rng rng(seed);
  ArchiveManifest m;
  const int n_rec = 1 + static_cast<int>(rng.UniformInt(4));
  for (int r = 0; r < n_rec; ++r) {
    Recording rec;
    rec.id = "rec" + std::to_string(r);
    rec.frame_rate = 100;
    rec.duration = 2000 + static_cast<Frames>(rng.UniformInt(8000));
    if (rng.Bernoulli(0.5)) rec.metadata.emplace_back("year", "1987");
    if (rng.Bernoulli(0.5)) rec.metadata.emplace_back("program", "news x");
    m.AddRecording(rec);
  }
  for (const Recording& rec : m.recordings) {
    Frames at = 0;
    while (at + 200 < rec.duration) {
      const Frames len = 100 + static_cast<Frames>(rng.UniformInt(400));
      const Frames end = std::min<Frames>(at + len, rec.duration);
      TimeSpan span(at, end);
      at = end + static_cast<Frames>(rng.UniformInt(300));

      Segment speech;
      speech.recording_id = rec.id;
      speech.span = span;
      speech.source = Source::kSad;
      m.Track(Layer::kSpeech).Add(speech);

      Segment spk = speech;
      spk.source = Source::kSd;
      spk.speaker = LabelId::Pseudo(static_cast<uint32_t>(rng.UniformInt(6)));
      m.Track(Layer::kSpeaker).Add(spk);

      Segment lang = speech;
      lang.source = Source::kLr;
      lang.language = rng.Bernoulli(0.6) ? LanguageTag::kL1 : LanguageTag::kL2;
      m.Track(Layer::kLanguage).Add(lang);

      if (rng.Bernoulli(0.8)) {
        Segment tr = lang;
        tr.source = Source::kAsr;
        tr.speaker = spk.speaker;
        tr.transcript = RandomTranscript(rng, span);
        m.Track(Layer::kTranscript).Add(tr);
      }
    }
  }
  m.Finalize();
  return m;
}

}  // namespace cstk::testing

#endif  // CSTK_TESTS_TESTING_GENERATORS_H_
