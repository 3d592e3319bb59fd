import numpy as np
import pytest
from fluxgo import genfun,flux,analysis,utils,verify
from fluxgo.types import GedankenScenario,MinimizerProblem
from fluxgo.errors import (ConfigError,InadmissibleShock,DomainViolation,ScenarioOrderViolation)

class TestBounds:
    """Closed-form inequalities."""

    def test_qi_max(self):
        assert analysis.qi_max_negative_energy(1.0) == pytest.approx(1/(12*np.pi),rel=1e-15)
        with pytest.raises(ConfigError):
            analysis.qi_max_negative_energy(0.0)

    def test_compensation(self):
        assert analysis.compensation_lower_bound(0.01,1.0) == pytest.approx(0.0160511,rel=1e-5)
        assert analysis.compensation_lower_bound(0.01,0.0) == 0.01

    def test_compensation_marginal(self):
        with pytest.raises(InadmissibleShock):
            analysis.compensation_lower_bound(0.01,1/(12*np.pi*0.01))

    def test_curve_increasing(self):
        a=np.linspace(0,0.9,10)/(12*np.pi*0.01)
        c=analysis.compensation_curve(0.01,a)
        assert np.all(np.diff(c) > 0)
        assert c[0] == 0.01

    def test_switching_bound(self):
        assert analysis.switching_bound(1.0) == pytest.approx(0.05305164770,rel=1e-10)
        assert analysis.switching_bound(1.0,polarizations=1) == pytest.approx(0.0265258,rel=1e-5)
        assert analysis.switching_bound(2.0,hbar=3.0) == pytest.approx(3*analysis.switching_bound(2.0))
        with pytest.raises(ConfigError):
            analysis.switching_bound(0.0)

    def test_hbar_covariance(self):
        for h in [0.5,3.0]:
            p1=MinimizerProblem(0.01,1.0)
            ph=MinimizerProblem(0.01*h,1.0,h)
            assert analysis.min_compensation_energy(ph) == pytest.approx(h*analysis.min_compensation_energy(p1),rel=1e-12)
            assert analysis.qi_max_negative_energy(2.0,h) == pytest.approx(h*analysis.qi_max_negative_energy(2.0),rel=1e-15)

class TestGedankenChain:
    """The switching-bound derivation."""

    def test_bound(self):
        c=analysis.gedanken_chain(1.0)
        assert c.bound_total == pytest.approx(1/(6*np.pi),rel=1e-12)
        assert c.bound_per_pol == pytest.approx(1/(12*np.pi),rel=1e-12)
        assert [s["name"] for s in c.steps] == ['optimal-delay','energy-independence','minimal-exit','polarizations']

    def test_energy_independence(self):
        c=analysis.gedanken_chain(0.5)
        s=c.step('energy-independence')
        assert s["spread"] < 1e-12
        assert np.allclose(s["value"],1/(12*np.pi*0.5),rtol=1e-12,atol=0)

    def test_witness_not_attained(self):
        w=analysis.gedanken_chain(1.0).witness
        assert w["attained"] is False
        assert w["x_f"] == 1.0
        assert w["x_i"] < 0

    def test_report_dict(self):
        d=analysis.gedanken_chain(1.0,polarizations=1).to_dict()
        assert d["bound_total"] == d["bound_per_pol"]
        assert all("relation" in s for s in d["steps"])

    def test_energy_too_large(self):
        with pytest.raises(ConfigError):
            analysis.gedanken_chain(1.0,E_grid=[0.1])

    def test_nonpositive_switch_time(self):
        with pytest.raises(ConfigError):
            analysis.gedanken_chain(-1.0)

class TestScenario:
    """Event ordering of the thought experiment."""

    def test_timeline(self):
        s=GedankenScenario(1.0,-2.0,1.0,0.005)
        t=analysis.scenario_timeline(s)
        assert t.names() == ['reflection','switch-on','switch-off','transmission']
        c=t.profile["constraint"]["integral_T_s_min"]
        assert c == pytest.approx(analysis.compensation_lower_bound(0.005,2.0),rel=1e-15)
        assert t.profile["T_s"] == 'unknown'

    def test_order_violation(self):
        with pytest.raises(ScenarioOrderViolation):
            analysis.scenario_timeline(GedankenScenario(2.0,-1.0,1.0,0.001))
        with pytest.raises(ScenarioOrderViolation):
            analysis.scenario_timeline(GedankenScenario(1.0,0.5,2.0,0.001))

    def test_inadmissible_scenario(self):
        with pytest.raises(ScenarioOrderViolation):
            analysis.shock_scenario_profile(GedankenScenario(1.0,-2.0,1.0,0.01))

    def test_reflection_at_switch_on(self):
        t=analysis.scenario_timeline(GedankenScenario(1.0,0.0,1.0,0.005))
        assert t.names() == ['reflection','switch-on','switch-off','transmission']
        assert t.events[0]["t"] == t.events[1]["t"] == 0.0
        assert t.profile["quiet_interval"] == [0.0,0.0]
        assert t.profile["constraint"]["integral_T_s_min"] == 0.005

class TestMinimizer:
    """Closed-form minimum and its consistency checks."""

    def test_closed_form(self,problem,f_eta):
        e=analysis.min_compensation_energy(problem)
        assert e == pytest.approx(0.0160511,rel=1e-5)
        assert e == pytest.approx(flux.delta_terms(f_eta)[-1].weight,rel=1e-12)

    def test_eta(self,f_eta):
        rho=genfun.f_eta_rho(0.01,1.0)
        rep=analysis.eta_from_f(f_eta,1.0)
        assert abs(rep.eta_L) < 1e-12
        assert rep(np.array([-0.5]))[0] == pytest.approx((rho+1)**2-1,rel=1e-12)
        assert rep(np.array([2.0]))[0] == 0.0

    def test_eta_not_identity(self,shock):
        with pytest.raises(DomainViolation):
            analysis.eta_from_f(shock,1.0)

    def test_casimir_shift(self,f_eta):
        rho=genfun.f_eta_rho(0.01,1.0)
        assert analysis.casimir_shift(f_eta,1.0) == pytest.approx(-rho*rho/(12*np.pi),rel=1e-8)

    def test_casimir_mollified(self,f_eta):
        g=genfun.mollify(f_eta,0.01)
        rep=analysis.eta_from_f(g,1.0)
        assert abs(rep.eta_L) < 1e-9

    def test_parameters_start_near_minimum(self,problem):
        theta=analysis.f_eta_parameters(0.01,1.0,problem.family_dim)
        g=genfun.make_logslope(theta[1:],theta[0],1.0)
        d=flux.delta_terms(g)
        assert d[0].weight == pytest.approx(-0.01,rel=1e-12)

    def test_oracle_energy_is_compensating(self,problem):
        theta=analysis.f_eta_parameters(0.01,1.0,problem.family_dim)
        energy,eta,_=analysis._oracle_terms(theta,problem)
        assert abs(eta) < 1e-10
        assert energy == pytest.approx(analysis.min_compensation_energy(problem),rel=1e-3)

    @pytest.mark.slow
    def test_oracle(self,problem):
        closed=analysis.min_compensation_energy(problem)
        energy,res=analysis.numeric_min_oracle(problem,seed=0,par={"nstart":2})
        assert energy >= closed-1e-6
        assert energy <= closed*1.005
        assert res.eta_residual <= 1e-4
        assert res.to_dict()["seed"] == 0

    @pytest.mark.slow
    def test_oracle_deterministic(self,problem):
        e1,_=analysis.numeric_min_oracle(problem,seed=3,par={"nstart":2})
        e2,_=analysis.numeric_min_oracle(problem,seed=3,par={"nstart":2})
        assert e1 == e2

    @pytest.mark.slow
    def test_oracle_from_f_eta(self,problem):
        theta=analysis.f_eta_parameters(0.01,1.0,problem.family_dim)
        energy,res=analysis.numeric_min_oracle(problem,x0=theta,par={"nstart":1})
        assert res.improvement_steps == 0
        assert res.nstart == 1
        assert abs(res.excess) < 5e-3

    @pytest.mark.slow
    def test_oracle_dominance(self):
        rng=utils.make_rng(11)
        for i in range(20):
            q=verify.random_minimizer_problem(rng)
            assert q.admissible
            closed=analysis.min_compensation_energy(q)
            energy,_=analysis.numeric_min_oracle(q,seed=i,par={"nstart":1})
            assert closed-1e-6 <= energy <= 1.005*closed

    def test_oracle_zero_energy(self):
        e,res=analysis.numeric_min_oracle(MinimizerProblem(0.0,1.0))
        assert e == 0.0
        assert res.nstart == 0

    def test_oracle_small_family(self,problem):
        with pytest.raises(ConfigError):
            analysis.numeric_min_oracle(MinimizerProblem(0.01,1.0,family_dim=2))
