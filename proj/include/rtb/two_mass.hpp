#pragma once

// Two point masses between walls at 0 and L, elastic collisions, simulated
// event by event. Mass-scaled coordinates q_i = x_i·sqrt(m_i) turn the
// configuration space into a right triangle whose angle at the (x1 = x2 = L)
// vertex is α/2 with cos α = (m1 − m2)/(m1 + m2).
//
// Wall correspondence in the canonical billiard frame:
//   x2 = L  (WallRight)        ↔ Horizontal leg
//   x1 = 0  (WallLeft)         ↔ Vertical leg
//   x1 = x2 (ParticleParticle) ↔ Hypotenuse

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "rtb/ensemble.hpp"
#include "rtb/simulation.hpp"

namespace rtb {

struct MassSystem {
  double m1 = 1.0;
  double m2 = 1.0;
  double L = 1.0;
  double x1 = 0.25;
  double x2 = 0.75;
  double v1 = 1.0;
  double v2 = -0.5;
};

enum class MassEventKind { ParticleParticle, WallLeft, WallRight };

std::string_view to_string(MassEventKind k) noexcept;

struct MassEvent {
  std::uint64_t index = 0;
  MassEventKind kind = MassEventKind::ParticleParticle;
  double time = 0.0;
  MassSystem state;  // after the event
};

/// arccos((m1 − m2)/(m1 + m2)) ∈ (0, π).
double mass_angle_map(double m1, double m2);

/// m2/m1 = tan²(α/2).
double mass_ratio_for_alpha(double alpha);

double kinetic_energy(const MassSystem& s);
double momentum(const MassSystem& s);

/// Throws ConfigError on violated invariants.
void validate_mass_system(const MassSystem& s);

class MassSimulator {
 public:
  explicit MassSimulator(const MassSystem& sys);

  /// Closed-form next event. SimultaneousEvent when two candidate times tie within 1e−14.
  MassEvent step();

  const MassSystem& state() const { return sys_; }
  double time() const { return time_; }
  std::uint64_t events() const { return index_; }

 private:
  MassSystem sys_;
  double time_ = 0.0;
  std::uint64_t index_ = 0;
};

std::vector<MassEvent> simulate_masses(const MassSystem& sys, std::uint64_t max_events);

/// Billiard wall encoding each event kind; swap_legs exchanges the two legs.
Wall event_wall(MassEventKind kind, bool swap_legs = false);

/// Equivalent billiard start: α from the mass ratio, position and direction
/// through the similarity carrying mass-scaled space onto the canonical triangle.
TrajectoryConfig map_initial_conditions(const MassSystem& sys);

struct EventComparison {
  std::uint64_t compared = 0;
  std::optional<std::uint64_t> first_disagreement;  // 1-based event index
  std::optional<MemberError> mass_abort;
  std::optional<RunAbort> billiard_abort;
  double max_energy_drift = 0.0;  // relative
};

EventComparison compare_event_sequences(const MassSystem& sys, std::uint64_t n_events,
                                        Precision precision, bool swap_legs = false);

// Event log: index,kind,time,x1,x2,v1,v2
void write_event_header(std::ostream& out);
void write_event_row(std::ostream& out, const MassEvent& e);

Json mass_system_to_json(const MassSystem& s);

}  // namespace rtb
