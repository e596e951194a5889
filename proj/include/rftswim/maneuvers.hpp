#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rftswim/dynamics.hpp"
#include "rftswim/validity.hpp"

namespace rftswim {

// ---------------------------------------------------------------------------
// Traveling bump

/// Bump-wave stroke parameters. half_length is in units of length, duty is
/// the fraction of the cycle spent creating (and again destroying) the bump.
struct BumpSpec {
  double amplitude = 0.6;
  double half_length = 0.1;
  double duty = 0.1;
  std::string profile_id = "sin2";

  /// Throws AmplitudeOutOfRange, BumpTooLong or InvalidArgument.
  void validate(double arm_length) const;
};

/// Odd, compactly supported wave on [-1, 1] built from A sin^2(4 pi u) on
/// [0, 1/4] by successive reflections: odd about 1/4, even about 1/2, odd
/// about 0. Zero outside [-1, 1].
double mother_wave(double u, double amplitude);
double mother_wave_slope(double u, double amplitude);
/// max |mother_wave_slope| = 4 pi A.
double mother_wave_max_slope(double amplitude);

/// Reference-interval quantities for a bump on an arm of the given length.
struct BumpConstants {
  double sin2 = 0.0;            // int sin^2 theta0
  double one_minus_cos = 0.0;   // int (1 - cos theta0)
  double thrust = 0.0;          // c_tau * one_minus_cos + (c_nu - c_tau) * sin2
  double axial_resistance = 0;  // c_tau * L + l (c_nu - c_tau) sin2
  double alpha = 0.0;           // stationary displacement is half_length * alpha
  double beta = 0.0;            // transient |x1'| <= l^2 beta / duty
  double force_alpha = 0.0;     // stationary thrust force is l force_alpha / (1 - 2 duty)
  double force_beta = 0.0;      // transient thrust integral <= l^2 force_beta / 2 per phase
  double low = 0.0;             // displacement bracket l alpha -+ 2 l^2 beta
  double high = 0.0;
};

BumpConstants bump_constants(double arm_length, const BumpSpec& spec, const DragCoefficients& drag,
                             std::size_t reference_intervals = 8000);

/// The symmetry integrals that make the lateral force and torque of a bump
/// vanish: the stationary ones and, at relative creation time tau in [0, 1],
/// the transient ones. Each entry should be zero.
std::vector<double> vanishing_integrals(double amplitude, double tau, std::size_t reference_intervals = 8000);

/// One cycle on [0, 1] of a bump created at the far end of a straight body
/// of length L, traveling to the base and destroyed there. Anchored at s = 0.
ShapeHistory translation_cycle(double length, const BumpSpec& spec, std::size_t nodes);

struct CycleOutcome {
  double dx1 = 0.0;
  double dx2 = 0.0;
  double dtheta = 0.0;
};

CycleOutcome run_translation_cycle(double length, const BumpSpec& spec, const DragCoefficients& drag,
                                   const Resolution& res = {});
double cycle_displacement(double length, const BumpSpec& spec, const DragCoefficients& drag,
                          const Resolution& res = {});

inline constexpr double plan_tolerance = 1e-8;  // relative to body length

/// How the last partial cycle is tuned to hit the target.
enum class RemainderTuning {
  HalfLength,  // shrink the bump
  Amplitude,   // flatten the bump; curvature never grows
};

/// k full cycles plus one tuned cycle, all played backwards when the target
/// is negative.
struct TranslationPlan {
  double target = 0.0;
  double length = 1.0;
  BumpSpec base;
  std::size_t full_cycles = 0;
  double full_displacement = 0.0;
  std::optional<BumpSpec> remainder;
  double remainder_displacement = 0.0;
  bool reversed = false;

  std::size_t cycles() const { return full_cycles + (remainder ? 1 : 0); }
};

TranslationPlan plan_translation(double length, double target, const BumpSpec& base, const DragCoefficients& drag,
                                 const Resolution& res = {}, RemainderTuning tuning = RemainderTuning::HalfLength);
/// Played over one unit of time per cycle; empty plans give a still body.
ShapeHistory translation_history(const TranslationPlan& plan, std::size_t nodes);

// ---------------------------------------------------------------------------
// Rotation in place

/// Geometry of the rotation maneuver on a body of length 2 * half_length
/// centred at its middle node.
struct RotationSetup {
  double half_length = 0.5;
  double ramp_angle = pi / 6;
  double margin = 0.0;  // kept clear at both ends of each arm

  double arm_start() const { return 0.5 * half_length + margin; }
  double arm_end() const { return half_length - margin; }
  double arm_length() const { return arm_end() - arm_start(); }
};

/// Default bump for rotation arms: the translation defaults, with the half
/// length a tenth of the whole body.
BumpSpec default_rotation_bump(const RotationSetup& setup);

/// Step 1 on [0, 1]: bends both halves into parallel offset arms. Step 3 is
/// its reverse. Throws RampDegenerate when the arm lines pass too close to
/// the centre.
ShapeHistory rotation_ramp(const RotationSetup& setup, std::size_t nodes);
/// Step 2 on [0, 1]: mirrored bumps travel along both arms toward the centre.
ShapeHistory rotation_cycle(const RotationSetup& setup, const BumpSpec& spec, std::size_t nodes);

/// Offset of the arm lines from the centre, <J p, e(ramp_angle)> with p the
/// arm base at the end of step 1.
double arm_lever(const RotationSetup& setup, std::size_t nodes);

struct RotationCycleOutcome {
  double dtheta = 0.0;
  double max_offset = 0.0;  // max |x| over the cycle
  double c_min = 0.0;       // rotational resistance range over the cycle
  double c_max = 0.0;
  double lower_bound = 0.0; // guaranteed rotation from the thrust estimates
};

RotationCycleOutcome run_rotation_cycle(const RotationSetup& setup, const BumpSpec& spec,
                                        const DragCoefficients& drag, const Resolution& res = {});

struct RotationPlan {
  double target = 0.0;
  RotationSetup setup;
  double ramp_rotation = 0.0;
  BumpSpec base;
  std::size_t full_cycles = 0;
  double full_rotation = 0.0;
  std::optional<BumpSpec> remainder;
  double remainder_rotation = 0.0;
  bool reversed = false;

  std::size_t cycles() const { return full_cycles + (remainder ? 1 : 0); }
};

RotationPlan plan_rotation(const RotationSetup& setup, double target, const BumpSpec& base,
                           const DragCoefficients& drag, const Resolution& res = {},
                           RemainderTuning tuning = RemainderTuning::HalfLength);
/// Ramp, cycles, reversed ramp; one unit of time each.
ShapeHistory rotation_history(const RotationPlan& plan, std::size_t nodes);

// ---------------------------------------------------------------------------
// Straightening and full pipeline

struct StraighteningPlan {
  double length = 1.0;
  double frame_angle = 0.0;   // rotation applied so the angle range is centred
  Vec2 base_point = Vec2::Zero();
  AngleProfile body;          // angles in the rotated frame, base at the origin

  RigidState initial_state() const { return {base_point, frame_angle}; }
};

/// Throws NotStraightenable unless the angle range is below pi/2 and the
/// curvature stays within 1/rho.
StraighteningPlan plan_straightening(const ArcCurve& curve, double rho);
/// theta(s, tau) = (1 - tau) theta_body(s) on [0, 1], anchored at s = 0.
ShapeHistory straightening_history(const StraighteningPlan& plan);

/// Position of a straight body: start point and direction.
struct Pose {
  Vec2 start = Vec2::Zero();
  double direction = 0.0;

  Vec2 barycenter(double length) const { return start + 0.5 * length * unit(direction); }
};

enum class SegmentKind { Straighten, Rotate, Translate, Unstraighten };
const char* segment_name(SegmentKind k);

struct PlanSegment {
  SegmentKind kind = SegmentKind::Straighten;
  double target = 0.0;        // rotation angle or displacement, 0 for shape changes
  std::size_t cycles = 0;
  BumpSpec bump;
  std::optional<BumpSpec> remainder;
  double units = 0.0;         // conventional duration before rescaling
  double t_begin = 0.0;
  double t_end = 0.0;
  double measured_dx1 = 0.0;  // displacement along the initial axis
  double measured_dtheta = 0.0;
  RigidState start;
  RigidState end;
};

struct PipelineOptions {
  Resolution res;
  BumpSpec translation_bump;
  std::optional<BumpSpec> rotation_bump;   // default_rotation_bump if unset
  double ramp_angle = pi / 6;
  double margin = 0.0;
  /// Rotations and translations smaller than these are skipped.
  double min_rotation = 1e-6;
  double min_translation = 1e-9;
};

struct ManeuverPlan {
  std::vector<PlanSegment> segments;
  double duration = 1.0;
  double ramp_rotation = 0.0;
  Pose straight_in;
  Pose straight_fin;
  double final_error = 0.0;  // max node distance to the target curve, / L
};

struct PipelineResult {
  ManeuverPlan plan;
  Trajectory trajectory;
};

/// Straighten, rotate, translate, rotate, unstraighten. Non-empty segments
/// share [0, T] equally.
PipelineResult plan_full(const ArcCurve& chi_in, const ArcCurve& chi_fin, double rho, const DragCoefficients& drag,
                         double duration = 1.0, const PipelineOptions& options = {});

}  // namespace rftswim
