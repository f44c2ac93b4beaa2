// Equations of motion of the hinged chain in the horizontal plane.
//
// For link i with leading node P_i, the moment balance about P_i is
//
//   M_drag,i + l_i (cos th_i R_y,i - sin th_i R_x,i)
//       = I_i thdd_i + (m_i l_i / 2)(ydd_P cos th_i - xdd_P sin th_i)
//
// where R_i = -sum_{j>i} (m_j a_G,j - D_j) is the force the downstream links
// exert on the trailing node of link i (zero for the free end). Every node
// and CG acceleration is affine in the angular accelerations, so the n
// balances form one linear system M thdd = b per derivative evaluation.
// Gravity and buoyancy act vertically and do not enter.
#pragma once

#include "hydro.hpp"
#include "model.hpp"
#include "numerics.hpp"
#include "shiptrack.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

namespace towsim::dynamics {

struct NodeKinematics {
    Vec2 position;
    Vec2 velocity;
    Vec2 acceleration;
};

struct LinkNodes {
    NodeKinematics lead;
    NodeKinematics cg;
    NodeKinematics tail;
};

struct ChainKinematics {
    std::vector<LinkNodes> links;
    bool has_acceleration = false;
};

struct AccelSystem {
    numerics::Matrix matrix;
    std::vector<double> rhs;
};

/// Mass and inertia of each link, computed once per configuration.
struct ChainProps {
    std::vector<BodyParams> bodies;
    std::vector<DerivedBodyProps> derived;

    static ChainProps from(const ChainConfig &cfg) {
        ChainProps p;
        p.bodies = cfg.links;
        for (const auto &b : cfg.links)
            p.derived.push_back(derive_body_props(b, cfg.fluid));
        return p;
    }
    std::size_t size() const { return bodies.size(); }
};

namespace detail {

inline NodeKinematics advance(const NodeKinematics &from, double len, double th, double thd,
                              std::optional<double> thdd) {
    const double s = std::sin(th);
    const double c = std::cos(th);
    NodeKinematics n;
    n.position = {from.position.x + len * c, from.position.y + len * s};
    n.velocity = {from.velocity.x - len * thd * s, from.velocity.y + len * thd * c};
    if (thdd) {
        n.acceleration = {from.acceleration.x - len * *thdd * s - len * thd * thd * c,
                          from.acceleration.y + len * *thdd * c - len * thd * thd * s};
    }
    return n;
}

// a = constant + sum_k coeff[k] * thdd_k
struct AffineAccel {
    Vec2 constant;
    std::vector<Vec2> coeff;

    explicit AffineAccel(std::size_t n, Vec2 c = {}) : constant(c), coeff(n) {}

    AffineAccel advanced(std::size_t k, double len, double th, double thd) const {
        AffineAccel out = *this;
        const double s = std::sin(th);
        const double c = std::cos(th);
        out.constant = out.constant + Vec2{-len * thd * thd * c, -len * thd * thd * s};
        out.coeff[k] = out.coeff[k] + Vec2{-len * s, len * c};
        return out;
    }
};

} // namespace detail

/// Lead, CG and tail kinematics of every link, propagated from the tow point.
/// Accelerations are filled only when `theta_ddot` is given.
inline ChainKinematics chain_kinematics(const ChainState &state, std::span<const double> lengths,
                                        const TowPointKinematics &tow,
                                        std::optional<std::span<const double>> theta_ddot = std::nullopt) {
    ChainKinematics out;
    out.has_acceleration = theta_ddot.has_value();
    NodeKinematics lead{tow.position, tow.velocity, theta_ddot ? tow.acceleration : Vec2{}};
    for (std::size_t i = 0; i < state.size(); ++i) {
        std::optional<double> a;
        if (theta_ddot)
            a = (*theta_ddot)[i];
        LinkNodes ln;
        ln.lead = lead;
        ln.cg = detail::advance(lead, 0.5 * lengths[i], state.theta[i], state.theta_dot[i], a);
        ln.tail = detail::advance(lead, lengths[i], state.theta[i], state.theta_dot[i], a);
        out.links.push_back(ln);
        lead = ln.tail;
    }
    return out;
}

inline std::vector<double> link_lengths(const std::vector<BodyParams> &bodies) {
    std::vector<double> l;
    for (const auto &b : bodies)
        l.push_back(b.length);
    return l;
}

/// Net force link j passes upstream: m_j a_G,j - (D_n + D_t)_j.
inline Vec2 downstream_force(std::size_t j, const ChainKinematics &kin, const hydro::DragResult &drag,
                             double mass) {
    return mass * kin.links.at(j).cg.acceleration - drag.total();
}

/// Per-link drag at the current state (lead-node velocities from the chain).
inline std::vector<hydro::DragResult> link_drags(const ChainState &state, const TowPointKinematics &tow,
                                                 const ChainProps &props, const FluidEnv &fluid,
                                                 const numerics::Quadrature &q, double v_eps) {
    const auto lengths = link_lengths(props.bodies);
    const ChainKinematics kin = chain_kinematics(state, lengths, tow);
    std::vector<hydro::DragResult> drags;
    drags.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const hydro::LinkMotion m{state.theta[i], state.theta_dot[i], kin.links[i].lead.velocity};
        drags.push_back(hydro::drag_forces(m, props.bodies[i], fluid, q, v_eps));
    }
    return drags;
}

inline AccelSystem assemble_accel_system(const ChainState &state, const TowPointKinematics &tow,
                                         const std::vector<hydro::DragResult> &drags,
                                         const ChainProps &props) {
    const std::size_t n = state.size();
    std::vector<detail::AffineAccel> lead_acc;
    std::vector<detail::AffineAccel> cg_acc;
    lead_acc.reserve(n);
    cg_acc.reserve(n);
    detail::AffineAccel a(n, tow.acceleration);
    for (std::size_t i = 0; i < n; ++i) {
        const double l = props.bodies[i].length;
        lead_acc.push_back(a);
        cg_acc.push_back(a.advanced(i, 0.5 * l, state.theta[i], state.theta_dot[i]));
        a = a.advanced(i, l, state.theta[i], state.theta_dot[i]);
    }

    AccelSystem sys{numerics::Matrix(n), std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        const double l = props.bodies[i].length;
        const double m = props.derived[i].mass;
        const double s = std::sin(state.theta[i]);
        const double c = std::cos(state.theta[i]);

        // residual_i(thdd) = sum_k row[k] thdd_k + constant
        std::vector<double> row(n, 0.0);
        double constant = -drags[i].moment;

        row[i] += props.derived[i].inertia_lead;
        const double half_ml = 0.5 * m * l;
        for (std::size_t k = 0; k < n; ++k)
            row[k] += half_ml * (c * lead_acc[i].coeff[k].y - s * lead_acc[i].coeff[k].x);
        constant += half_ml * (c * lead_acc[i].constant.y - s * lead_acc[i].constant.x);

        // l (R_x s - R_y c) with R = -sum_{j>i} (m_j a_Gj - D_j)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double mj = props.derived[j].mass;
            const Vec2 dj = drags[j].total();
            for (std::size_t k = 0; k < n; ++k)
                row[k] -= l * mj * (s * cg_acc[j].coeff[k].x - c * cg_acc[j].coeff[k].y);
            constant -= l * (s * (mj * cg_acc[j].constant.x - dj.x) -
                             c * (mj * cg_acc[j].constant.y - dj.y));
        }

        for (std::size_t k = 0; k < n; ++k)
            sys.matrix(i, k) = row[k];
        sys.rhs[i] = -constant;
    }
    return sys;
}

inline std::vector<double> angular_accelerations(const AccelSystem &sys) {
    return numerics::solve_dense(sys.matrix, sys.rhs);
}

/// Flat ODE state: [theta_1..theta_n, thetadot_1..thetadot_n].
inline std::vector<double> pack(const ChainState &s) {
    std::vector<double> y(s.theta);
    y.insert(y.end(), s.theta_dot.begin(), s.theta_dot.end());
    return y;
}

inline ChainState unpack(double t, std::span<const double> y) {
    const std::size_t n = y.size() / 2;
    ChainState s;
    s.t = t;
    s.theta.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    s.theta_dot.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
    return s;
}

/// Right-hand side of the chain ODE for a fixed configuration.
class ChainDynamics {
  public:
    explicit ChainDynamics(const ChainConfig &cfg)
        : fluid_(cfg.fluid), props_(ChainProps::from(cfg)),
          quad_(numerics::gauss_legendre(cfg.quadrature_points, cfg.quadrature_panels)),
          v_eps_(cfg.v_epsilon) {}

    const ChainProps &props() const { return props_; }
    const numerics::Quadrature &quadrature() const { return quad_; }
    const FluidEnv &fluid() const { return fluid_; }
    double v_epsilon() const { return v_eps_; }

    std::vector<hydro::DragResult> drags(const ChainState &s, const TowPointKinematics &tow) const {
        return link_drags(s, tow, props_, fluid_, quad_, v_eps_);
    }

    std::vector<double> theta_ddot(const ChainState &s, const TowPointKinematics &tow) const {
        const AccelSystem sys = assemble_accel_system(s, tow, drags(s, tow), props_);
        try {
            return angular_accelerations(sys);
        } catch (const numerics::SingularMatrixError &e) {
            std::ostringstream msg;
            msg << e.what() << " at t=" << s.t << " s, theta=[";
            for (std::size_t i = 0; i < s.size(); ++i)
                msg << (i ? ", " : "") << s.theta[i];
            msg << "]";
            throw NumericalError(msg.str());
        }
    }

    /// d/dt [theta, thetadot] given the tow-point kinematics at time t.
    std::vector<double> derivative(double t, std::span<const double> y,
                                   const TowPointKinematics &tow) const {
        const ChainState s = unpack(t, y);
        const std::vector<double> acc = theta_ddot(s, tow);
        std::vector<double> dy(s.theta_dot);
        dy.insert(dy.end(), acc.begin(), acc.end());
        return dy;
    }

  private:
    FluidEnv fluid_;
    ChainProps props_;
    numerics::Quadrature quad_;
    double v_eps_;
};

inline std::vector<double> rhs(double t, const ChainState &state, const ShipTrajectory &traj,
                               const ChainConfig &cfg) {
    const ChainDynamics dyn(cfg);
    return dyn.derivative(t, pack(state), traj.at(t));
}

/// Every link trailing straight behind a tow point moving on `course_deg`,
/// at rest relative to it.
inline ChainState trailing_state(std::size_t links, double course_deg, double t = 0.0) {
    ChainState s;
    s.t = t;
    s.theta.assign(links, course_to_math_angle(course_deg) + std::numbers::pi);
    s.theta_dot.assign(links, 0.0);
    return s;
}

} // namespace towsim::dynamics
