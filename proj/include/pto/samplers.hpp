#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pto/environment.hpp"

namespace pto {

using Rng = std::mt19937_64;

enum class SamplerKind { Uniform, CameraBased };

struct SamplerConfig {
    SamplerKind kind = SamplerKind::Uniform;
    double goalBias = 0.2;
    /// Probability that a non-goal draw is camera-aimed (CameraBased only).
    double cameraFraction = 0.5;
    std::uint64_t seed = 0;
    int cameraRetries = 100;

    void validate() const
    {
        if (!(goalBias >= 0 && goalBias <= 1)) throw std::invalid_argument("goalBias must lie in [0, 1]");
        if (!(cameraFraction >= 0 && cameraFraction <= 1))
            throw std::invalid_argument("cameraFraction must lie in [0, 1]");
        if (cameraRetries < 1) throw std::invalid_argument("cameraRetries must be at least 1");
    }
};

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double uniformIn(double lo, double hi, Rng& rng)
{
    if (lo == hi) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform heading in (-pi, pi].
inline double uniformHeading(Rng& rng) { return normalizeAngle(uniformIn(-std::numbers::pi, std::numbers::pi, rng)); }

inline RobotState sampleUniform(const Environment& env, Rng& rng)
{
    const double x = uniformIn(env.bounds.min.x, env.bounds.max.x, rng);
    const double y = uniformIn(env.bounds.min.y, env.bounds.max.y, rng);
    return RobotState(x, y, uniformHeading(rng));
}

/// State at `position` whose heading points at `target`.
inline RobotState facing(Vec2 position, Vec2 target)
{
    return RobotState(position.x, position.y, std::atan2(target.y - position.y, target.x - position.x));
}

/// Camera frame at camPos looking at targetPos with a horizontal x-axis:
/// columns (x, y, z) with z along the viewing direction, x = e_z cross z.
inline Eigen::Matrix3d computeCameraFrame(const Eigen::Vector3d& camPos, const Eigen::Vector3d& targetPos)
{
    const Eigen::Vector3d dir = targetPos - camPos;
    if (dir.norm() == 0) throw std::invalid_argument("camera frame: camera and target coincide");
    const Eigen::Vector3d z = dir.normalized();
    const Eigen::Vector3d xRaw = Eigen::Vector3d::UnitZ().cross(z);
    if (xRaw.norm() < 1e-12) throw std::invalid_argument("camera frame: viewing direction parallel to the z-axis");
    const Eigen::Vector3d x = xRaw.normalized();
    const Eigen::Vector3d y = z.cross(x).normalized();
    Eigen::Matrix3d frame;
    frame.col(0) = x;
    frame.col(1) = y;
    frame.col(2) = z;
    return frame;
}

/// Camera-aimed sample: a uniformly chosen object present under hIdx, a
/// uniform position valid under hIdx, heading straight at the object.
inline RobotState sampleCameraPose(const Environment& env, std::size_t hIdx, Rng& rng, int retries = 100)
{
    if (hIdx >= env.numWorlds()) throw std::out_of_range("sampleCameraPose: hypothesis index out of range");
    std::vector<std::size_t> present;
    ObjectMask mask = env.world.hypotheses().presentObjects(hIdx);
    while (mask != 0) {
        present.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    if (present.empty()) throw SamplingError("no partially observable object present in this hypothesis");
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, present.size() - 1)(rng);
    const Vec2 target = env.poObjects.at(present[pick]).shape.center;
    for (int attempt = 0; attempt < retries; ++attempt) {
        const Vec2 position{uniformIn(env.bounds.min.x, env.bounds.max.x, rng),
                            uniformIn(env.bounds.min.y, env.bounds.max.y, rng)};
        if (position == target) continue;
        RobotState s = facing(position, target);
        if (isValid(s, hIdx, env)) return s;
    }
    throw SamplingError("camera sampler exhausted its retry budget");
}

enum class SampleSource { Goal, Uniform, Camera };

struct Sample {
    RobotState state;
    SampleSource source = SampleSource::Uniform;
};

/// Owns the RNG of one planning run. Draws the goal with probability goalBias,
/// otherwise a uniform state or, for the camera sampler, a camera-aimed state
/// with probability cameraFraction. Camera draws fall back to uniform when no
/// object is present or the retry budget runs out.
class StateSampler {
public:
    explicit StateSampler(SamplerConfig config) : config_(config), rng_(config.seed) { config_.validate(); }

    const SamplerConfig& config() const { return config_; }
    Rng& rng() { return rng_; }

    std::size_t uniformIndex(std::size_t count)
    {
        return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_);
    }

    Sample draw(const Environment& env, std::size_t hIdx)
    {
        const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        if (r < config_.goalBias) return {goalFor(hIdx, env), SampleSource::Goal};
        if (config_.kind == SamplerKind::CameraBased &&
            std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < config_.cameraFraction &&
            env.world.hypotheses().presentObjects(hIdx) != 0) {
            try {
                return {sampleCameraPose(env, hIdx, rng_, config_.cameraRetries), SampleSource::Camera};
            } catch (const SamplingError&) {
                // fall through to a uniform draw
            }
        }
        return {sampleUniform(env, rng_), SampleSource::Uniform};
    }

private:
    SamplerConfig config_;
    Rng rng_;
};

}  // namespace pto
