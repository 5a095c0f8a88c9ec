#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chartnav/chart_model.h"
#include "chartnav/sonification.h"

namespace chartnav {

// Recognized gestures. Raw multi-touch recognition is the client's job.
enum class EventKind {
  kTouchDown,
  kTouchMove,
  kTouchUp,
  kSwipe,
  kDoubleTap,
  kDoubleTapHoldMove,
  kZScrub,
  kRotorRotate,
  kRotorFlick,
  kPinch,
  kSplitTap,
  kThreeFingerSwipe,
};

enum class Direction { kNone, kLeft, kRight, kUp, kDown, kHold };
enum class Rotation { kClockwise, kCounterClockwise };

std::string_view ToString(EventKind kind);
std::string_view ToString(Direction direction);
std::string_view ToString(Rotation rotation);
std::optional<EventKind> ParseEventKind(std::string_view text);
std::optional<Direction> ParseDirection(std::string_view text);
std::optional<Rotation> ParseRotation(std::string_view text);

struct InputEvent {
  EventKind kind = EventKind::kTouchDown;
  std::int64_t time_ms = 0;
  std::optional<ScreenPoint> position;
  // swipe: left/right/up/down; double_tap_hold_move: any incl. hold;
  // rotor_flick: up/down; three_finger_swipe: left/right.
  Direction direction = Direction::kNone;
  Rotation rotation = Rotation::kClockwise;  // rotor_rotate
  double scale = 1.0;                        // pinch

  // Empty when the fields fit the kind; otherwise what is wrong.
  std::optional<std::string> Problem() const;

  friend bool operator==(const InputEvent&, const InputEvent&) = default;

  static InputEvent TouchDown(std::int64_t t, ScreenPoint p);
  static InputEvent TouchMove(std::int64_t t, ScreenPoint p);
  static InputEvent TouchUp(std::int64_t t, std::optional<ScreenPoint> p = std::nullopt);
  static InputEvent Swipe(std::int64_t t, Direction d);
  static InputEvent DoubleTap(std::int64_t t);
  static InputEvent DoubleTapHoldMove(std::int64_t t, Direction d);
  static InputEvent ZScrub(std::int64_t t);
  static InputEvent RotorRotate(std::int64_t t, Rotation r);
  static InputEvent RotorFlick(std::int64_t t, Direction d);
  static InputEvent Pinch(std::int64_t t, double scale, ScreenPoint focus);
  static InputEvent SplitTap(std::int64_t t, std::optional<ScreenPoint> p = std::nullopt);
  static InputEvent ThreeFingerSwipe(std::int64_t t, Direction d);
};

// Short non-speech cues.
enum class Earcon {
  kUnavailable,  // gesture has no effect here
  kPage,         // focus crossed onto another page
  kHold,         // finger still on the focused region
};

std::string_view ToString(Earcon earcon);
std::optional<Earcon> ParseEarcon(std::string_view text);

struct Speech {
  std::string text;
  friend bool operator==(const Speech&, const Speech&) = default;
};
struct Tone {
  ToneSpec tone;
  friend bool operator==(const Tone&, const Tone&) = default;
};
struct ToneSequence {
  std::vector<ToneSpec> tones;
  friend bool operator==(const ToneSequence&, const ToneSequence&) = default;
};
struct Haptic {
  int pulses = 0;
  friend bool operator==(const Haptic&, const Haptic&) = default;
};
struct ModeAnnouncement {
  std::string text;
  friend bool operator==(const ModeAnnouncement&, const ModeAnnouncement&) = default;
};
struct EarconCue {
  Earcon earcon = Earcon::kUnavailable;
  friend bool operator==(const EarconCue&, const EarconCue&) = default;
};

using FeedbackPayload =
    std::variant<Speech, Tone, ToneSequence, Haptic, ModeAnnouncement, EarconCue>;

struct FeedbackEvent {
  // Time of the triggering event, except for a deferred end-of-pan tone.
  std::int64_t time_ms = 0;
  FeedbackPayload payload;

  friend bool operator==(const FeedbackEvent&, const FeedbackEvent&) = default;
};

}  // namespace chartnav
