import json
import numpy as np
import pytest
from fluxgo import genfun
from fluxgo.types import MobiusParams,ShockParams,GeneratingFunction,PiecewiseSegment
from fluxgo.errors import (ConfigError,NonMonotone,PoleInDomain,InadmissibleShock,DomainViolation)

class TestConstructors:
    """Closed-form generators and their admissibility checks."""

    def test_identity(self):
        f=genfun.make_identity()
        x=np.linspace(-3,3,7)
        assert np.array_equal(f(x),x)
        assert f.derivative(0.4,1) == 1.0
        assert f.derivative(0.4,2) == 0.0
        assert f.kinks == ()
        assert f.asymptotic_slopes == (1.0,1.0)

    def test_moebius_values(self):
        p=MobiusParams(a=1.0,b=0.2,c=0.1,d=1.5)
        f=genfun.make_moebius(p,(0.0,1.0))
        x=0.3
        assert f(x) == pytest.approx((0.1+1.5*x)/(1+0.2*x),rel=1e-15)
        assert f.derivative(x,1) == pytest.approx(p.det/(1+0.2*x)**2,rel=1e-14)

    def test_moebius_pole_in_domain(self):
        p=MobiusParams(a=1.0,b=-2.0,c=0.0,d=1.0)
        with pytest.raises(PoleInDomain):
            genfun.make_moebius(p,(0.0,1.0))

    def test_moebius_pole_on_boundary_rejected(self):
        p=MobiusParams(a=1.0,b=-1.0,c=0.0,d=1.0)
        with pytest.raises(PoleInDomain):
            genfun.make_moebius(p,(0.0,1.0))

    def test_moebius_decreasing(self):
        with pytest.raises(NonMonotone):
            genfun.make_moebius(MobiusParams(a=1.0,b=0.0,c=0.0,d=-1.0))

    def test_moebius_affine_on_whole_line(self):
        f=genfun.make_moebius(MobiusParams(a=2.0,b=0.0,c=1.0,d=3.0))
        assert f.asymptotic_slopes == (1.5,1.5)
        assert f(2.0) == pytest.approx(3.5)

    def test_compose_moebius(self):
        p1=MobiusParams(a=1.0,b=0.1,c=0.2,d=1.3)
        p2=MobiusParams(a=1.0,b=-0.2,c=0.1,d=1.1)
        pc=genfun.compose_moebius(p1,p2)
        f1=genfun.make_moebius(p1,(0.0,10.0))
        f2=genfun.make_moebius(p2,(0.0,2.0))
        fc=genfun.make_moebius(pc,(0.0,2.0))
        for x in [0.0,0.5,1.0,1.5]:
            assert fc(x) == pytest.approx(f1(f2(x)),rel=1e-13)

    def test_shock_kinks_and_c1(self,shock,shock_params):
        assert shock.kinks == (0.0,1.0)
        for k in shock.kinks:
            assert shock.derivative(k,0,side='left') == pytest.approx(shock.derivative(k,0),abs=1e-14)
            assert shock.derivative(k,1,side='left') == pytest.approx(shock.derivative(k,1),rel=1e-13)
        assert shock.derivative(-5.0,1) == 1.0
        eps=shock_params.epsilon
        right=eps/(np.sqrt(eps)-eps*shock_params.l)**2
        assert shock.asymptotic_slopes[1] == pytest.approx(right,rel=1e-14)

    def test_shock_inadmissible(self):
        with pytest.raises(InadmissibleShock):
            genfun.make_shock(ShockParams(0.05,0.0,1.0))

    def test_shock_marginal(self):
        E=0.01
        with pytest.raises(InadmissibleShock):
            genfun.make_shock(ShockParams(E,0.0,1.0/(12*np.pi*E)))

    def test_shock_degenerate(self):
        f=genfun.make_shock(ShockParams(0.0,0.0,1.0))
        assert f.kinks == ()
        assert f.name == 'shock'
        g=genfun.make_shock(ShockParams(0.01,0.5,0.5))
        assert g(0.3) == 0.3

    def test_shock_params_order(self):
        with pytest.raises(ConfigError):
            ShockParams(0.01,1.0,0.0)

    def test_f_eta(self,f_eta):
        rho=genfun.f_eta_rho(0.01,1.0)
        assert f_eta.kinks == (0.0,1.0)
        x=np.array([1.0,1.5,4.0])
        assert np.allclose(f_eta(x),x,rtol=0,atol=1e-15)
        assert f_eta.derivative(-1.0,1) == pytest.approx(1/(rho+1)**2,rel=1e-14)
        assert f_eta.derivative(0.0,1,side='left') == pytest.approx(f_eta.derivative(0.0,1),rel=1e-13)

    def test_logslope_joins_identity(self):
        f=genfun.make_logslope([0.5,0.2,-0.1,0.3],0.4,1.0)
        assert f(1.0) == pytest.approx(1.0,rel=1e-14)
        assert f.derivative(1.0,1,side='left') == pytest.approx(1.0,rel=1e-13)
        assert f.derivative(0.0,0,side='left') == pytest.approx(f.derivative(0.0),rel=1e-13)
        assert f.derivative(0.0,2) == pytest.approx(0.4*f.derivative(0.0,1),rel=1e-13)
        assert genfun.validate(f).passed

    def test_numeric_derivatives(self,exp_generator):
        for nu in [1,2,3]:
            assert exp_generator.derivative(0.3,nu) == pytest.approx(np.exp(0.3),rel=1e-7)

    def test_domain_violation(self):
        f=genfun.make_moebius(MobiusParams(a=1.0,b=0.5,c=0.0,d=1.0),(0.0,1.0))
        with pytest.raises(DomainViolation):
            f(2.0)

class TestMollify:
    """Smoothing of kinked generators."""

    def test_removes_kinks(self,shock):
        g=genfun.mollify(shock,0.05)
        assert g.kinks == ()
        assert g.smoothing == 0.05
        assert g.core_interval() == pytest.approx((-0.05,1.05))

    def test_affine_far_from_core(self,shock):
        g=genfun.mollify(shock,0.05)
        for x in [-0.5,-0.1,1.2,2.0]:
            assert g(x) == pytest.approx(shock(x),rel=1e-10,abs=1e-12)
            assert g.derivative(x,1) == pytest.approx(shock.derivative(x,1),rel=1e-10)
            assert abs(g.derivative(x,2)) < 1e-8

    def test_monotone(self,shock):
        g=genfun.mollify(shock,0.02)
        x=np.linspace(-0.2,1.2,141)
        assert np.all(g.derivative(x,1) > 0)

    def test_default_width(self,shock):
        assert genfun.mollify(shock).smoothing == pytest.approx(0.01)

    def test_bad_width(self,shock):
        with pytest.raises(ConfigError):
            genfun.mollify(shock,-1.0)

    def test_identity_fixed(self):
        g=genfun.mollify(genfun.make_identity(),0.3)
        x=np.linspace(-2,2,21)
        assert np.allclose(g(x),x,rtol=0,atol=1e-13)
        assert np.allclose(g.derivative(x,1),1.0,rtol=0,atol=1e-13)
        assert np.max(np.abs(g.derivative(x,2))) < 1e-12

    def test_second_order_convergence(self):
        f=genfun.make_numeric(lambda x: x+0.5*np.sin(x),name='sine')
        x=np.linspace(-2,2,41)
        errs=[np.max(np.abs(genfun.mollify(f,w)(x)-f(x))) for w in [0.4,0.2,0.1]]
        order=np.log2(np.array(errs[:-1])/np.array(errs[1:]))
        assert np.all(order > 1.8)

class TestValidate:
    """Validation reports."""

    def test_shock_passes(self,shock):
        rep=genfun.validate(shock)
        assert rep.passed
        assert rep.failures() == []

    def test_constructors_pass(self,f_eta):
        m=genfun.make_moebius(MobiusParams(a=1.0,b=0.4,c=-0.3,d=1.2),(-0.5,1.5))
        for f in [genfun.make_identity(),m,f_eta]:
            rep=genfun.validate(f)
            assert rep.passed,rep.failures()

    def test_discontinuity_reported(self):
        segs=[PiecewiseSegment((-np.inf,0.0),'affine',(0.0,0.0,1.0)),
              PiecewiseSegment((0.0,np.inf),'affine',(0.0,1.0,1.0))]
        rep=genfun.validate(GeneratingFunction(segs,kinks=(0.0,)))
        assert not rep.passed
        assert 'continuity' in [c["name"] for c in rep.failures()]

    def test_decreasing_reported(self):
        segs=[PiecewiseSegment((-np.inf,np.inf),'affine',(0.0,0.0,-1.0))]
        rep=genfun.validate(GeneratingFunction(segs))
        assert not rep.passed
        assert 'monotone' in [c["name"] for c in rep.failures()]

class TestSerialization:
    """JSON documents of generating functions."""

    def test_segment_roundtrip(self,shock):
        g=genfun.loads(shock.to_json())
        x=np.linspace(-1,2,31)
        assert np.array_equal(g(x),shock(x))
        assert g.kinks == shock.kinks

    def test_constructor_document(self,shock):
        g=genfun.loads('{"constructor": "shock", "E_n": 0.01, "x_i": 0, "x_f": 1}')
        assert g.kinks == shock.kinks
        assert g(0.5) == shock(0.5)

    def test_mollified_roundtrip(self,shock,tmp_path):
        g=genfun.mollify(shock,0.05)
        path=tmp_path/'g.json'
        genfun.save(g,path)
        h=genfun.load(path)
        assert h.smoothing == 0.05
        assert h(0.3) == pytest.approx(g(0.3),rel=1e-15)

    def test_file(self,shock_json):
        assert genfun.load(shock_json).name == 'shock'

    def test_malformed_json(self):
        with pytest.raises(ConfigError):
            genfun.loads('{"constructor": "shock",')

    def test_unknown_constructor(self):
        with pytest.raises(ConfigError):
            genfun.loads('{"constructor": "spline"}')

    def test_missing_field(self):
        with pytest.raises(ConfigError):
            genfun.loads('{"constructor": "shock", "E_n": 0.01}')

    def test_missing_file(self,tmp_path):
        with pytest.raises(ConfigError):
            genfun.load(tmp_path/'none.json')

    def test_numeric_not_serializable(self,exp_generator):
        with pytest.raises(ConfigError):
            exp_generator.to_json()

    def test_inadmissible_document(self):
        with pytest.raises(InadmissibleShock):
            genfun.loads(json.dumps({"constructor":"shock","E_n":0.05,"x_i":0,"x_f":1}))

class TestInverse:

    def test_shock_inverse(self,shock):
        for y in [-2.0,0.1,0.9,3.0]:
            assert shock(genfun.inverse(shock,y)) == pytest.approx(y,abs=1e-12)
