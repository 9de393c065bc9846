#include "demos.hpp"

#include "goh/errors.hpp"

namespace goh::cli {

namespace {

FrameSpec corank_one(std::string name, std::size_t n, std::vector<std::string> a, std::string description) {
  FrameSpec spec;
  spec.name = std::move(name);
  spec.description = std::move(description);
  spec.dimension = n;
  spec.rank = n - 1;
  spec.normal_form = std::move(a);
  return spec;
}

}  // namespace

const std::vector<FrameSpec>& demo_frames() {
  static const std::vector<FrameSpec> demos{
      corank_one("martinet", 3, {"0", "x1^2"},
                 "Martinet distribution X1 = d1, X2 = d2 + x1^2 d3. Singular set: the surface x1 = 0."),
      corank_one("dim4", 4, {"x2*x4", "x1 + x3^2", "x1*x4"},
                 "Rank 3 in dimension 4, X^i = d_i + A_i d4. The kernel of the reduced Goh matrix is spanned by "
                 "Z = [X1,X2](x4) X3 + [X3,X1](x4) X2 + [X2,X3](x4) X1."),
      corank_one("dim4-engel", 4, {"0", "x1", "x2"},
                 "Engel-type frame in dimension 4. Constant reduced Goh matrix of rank 2; Z = d1 + d3 + x2 d4."),
      corank_one("dim5", 5, {"0", "x1", "x1*x2 + x5*x1", "0"},
                 "Rank 4 in dimension 5 with reduced Goh matrix of rank at most 2 everywhere (X4 = d4 commutes "
                 "with the frame), so its 4x4 Pfaffian vanishes identically and four generators Z^1..Z^4 span "
                 "the kernel."),
      corank_one("dim6-cubic", 6, {"0", "x1", "-x1", "(x2+x3)^3", "0"},
                 "Rank 5 in dimension 6 with A4 = R(x2+x3). Caveat: R(u) = u^3 replaces a smooth R whose "
                 "derivative vanishes on a set of positive measure (not polynomial); the rank dichotomy, kernel "
                 "dimension 1 off {x2+x3=0} and 3 on it, survives, the positive-measure singular set does not."),
  };
  return demos;
}

const FrameSpec& demo_frame(const std::string& name) {
  for (const auto& spec : demo_frames())
    if (spec.name == name) return spec;
  std::string known;
  for (const auto& spec : demo_frames()) known += (known.empty() ? "" : ", ") + spec.name;
  throw RangeError("unknown demo \"" + name + "\" (known: " + known + ")");
}

}  // namespace goh::cli
