#pragma once

#include <array>
#include <vector>

#include "cochord/frame.hpp"

namespace cochord {

class Body;
using BodyPtr = std::shared_ptr<const Body>;

/// Structural visitor used for serialization and closed-form recognition.
class BodyVisitor {
 public:
  virtual ~BodyVisitor() = default;
  virtual void elliptic_ball(const Vec& axes) = 0;
  virtual void ball(const Vec& center, double radius) = 0;
  virtual void interval_box(const std::vector<std::pair<double, double>>& b) = 0;
  virtual void polydisc(const Vec& radii) = 0;
  virtual void vertex_polytope(const Mat& vertices, bool symmetric) = 0;
  virtual void product(const BodyPtr& left, const BodyPtr& right) = 0;
  virtual void lagrangian_product(const BodyPtr& q, const BodyPtr& p) = 0;
  virtual void polar(const BodyPtr& of) = 0;
  virtual void psum(double p, const BodyPtr& left, const BodyPtr& right) = 0;
  virtual void scale(double factor, const BodyPtr& of) = 0;
  virtual void translate(const Vec& shift, const BodyPtr& of) = 0;
  virtual void symm_diff(const BodyPtr& of) = 0;
};

}  // namespace cochord
