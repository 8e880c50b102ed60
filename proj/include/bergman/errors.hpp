#ifndef BERGMAN_ERRORS_HPP
#define BERGMAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bergman {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain construction failures carry the offending disk indices.
struct DiskNotContained : Error {
  int index;
  explicit DiskNotContained(int i)
      : Error("disk " + std::to_string(i) + " is not strictly inside the unit disk"),
        index(i) {}
};

struct DisksOverlap : Error {
  int first, second;
  DisksOverlap(int i, int j)
      : Error("disks " + std::to_string(i) + " and " + std::to_string(j) + " intersect"),
        first(i), second(j) {}
};

struct CenterAtOrigin : Error {
  int index;
  explicit CenterAtOrigin(int i)
      : Error("disk " + std::to_string(i) +
              " is concentric; reflection data x, y, epsilon are undefined"),
        index(i) {}
};

struct FamilyExplosion : Error {
  using Error::Error;
};

struct TailTooLarge : Error {
  double tail;
  explicit TailTooLarge(double t)
      : Error("family truncation tail " + std::to_string(t) + " exceeds the tolerance"),
        tail(t) {}
};

struct PoleHit : Error {
  using Error::Error;
};

struct IllConditioned : Error {
  using Error::Error;
};

struct NotYetAsymptotic : Error {
  using Error::Error;
};

struct NonConvergence : Error {
  using Error::Error;
};

struct AtPole : Error {
  using Error::Error;
};

struct BranchGuard : Error {
  using Error::Error;
};

struct OnContour : Error {
  using Error::Error;
};

struct InsideRhoX : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct TooCloseToAj : Error {
  using Error::Error;
};

struct OnExceptionalPoint : Error {
  using Error::Error;
};

struct NotTwoCircle : Error {
  using Error::Error;
};

struct PointTooCloseToContour : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bergman

#endif  // BERGMAN_ERRORS_HPP
