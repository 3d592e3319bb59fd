import json
import numpy as np
import pandas as pd
import pytest
from fluxgo import genfun,flux
from fluxgo.types import MobiusParams,ShockParams,deltas_file
from fluxgo.errors import KinkEvaluation

class TestSchwarzian:
    """Smooth part of the flux."""

    def test_identity(self):
        f=genfun.make_identity()
        assert flux.schwarzian(f,0.7) == 0.0
        assert flux.flux_density(f,0.7) == 0.0

    def test_moebius_vanishes(self):
        f=genfun.make_moebius(MobiusParams(a=1.0,b=0.3,c=-0.2,d=1.4),(0.0,1.0))
        x=np.linspace(0.05,0.95,10)
        assert np.max(np.abs(flux.schwarzian(f,x))) < 1e-12

    def test_exponential(self,exp_generator):
        assert flux.schwarzian(exp_generator,0.0) == pytest.approx(-0.5,rel=1e-6)
        assert flux.flux_density(exp_generator,0.0) == pytest.approx(1/(48*np.pi),rel=1e-6)

    def test_hbar_scaling(self,exp_generator):
        assert flux.flux_density(exp_generator,0.2,hbar=3.0) == pytest.approx(3*flux.flux_density(exp_generator,0.2))

    def test_shock_branches_flat(self,shock):
        x=np.array([-1.0,0.25,0.5,0.75,2.0])
        assert np.max(np.abs(flux.flux_density(shock,x))) < 1e-12

    def test_kink_rejected(self,shock):
        with pytest.raises(KinkEvaluation):
            flux.schwarzian(shock,1.0)

class TestDeltaTerms:
    """Kink weights of the shock profiles."""

    def test_shock_weights(self,shock):
        d=flux.delta_terms(shock)
        assert [t.location for t in d] == [0.0,1.0]
        assert d[0].weight == pytest.approx(-0.01,rel=1e-12)
        assert d[1].weight == pytest.approx(0.0160511,rel=1e-5)
        assert d[1].weight == pytest.approx(0.01/(1-12*np.pi*0.01),rel=1e-12)

    def test_f_eta_weights(self,f_eta):
        d=flux.delta_terms(f_eta)
        assert d[0].weight == pytest.approx(-0.01,rel=1e-12)
        assert d[1].weight == pytest.approx(0.01/(1-12*np.pi*0.01),rel=1e-12)

    def test_no_kinks(self):
        assert flux.delta_terms(genfun.make_identity()) == []

    def test_hbar(self):
        s=ShockParams(0.02,-1.0,0.5,hbar=2.0)
        d=flux.delta_terms(genfun.make_shock(s))
        assert d[0].weight == pytest.approx(-0.02,rel=1e-12)
        assert d[1].weight == pytest.approx(0.02/(1-12*np.pi*0.02*1.5/2.0),rel=1e-12)

class TestTotalEnergy:
    """Integrated flux profiles."""

    def test_shock_closed_form(self,shock,shock_params):
        e=flux.total_energy(flux.flux_profile(shock))
        assert e == pytest.approx(flux.shock_total_energy(shock_params),rel=1e-10)
        assert e > 0

    def test_half_weight_on_endpoint(self,shock):
        p=flux.flux_profile(shock)
        assert flux.total_energy(p,(0.0,0.5)) == pytest.approx(-0.005,rel=1e-12)
        assert flux.total_energy(p,(-1.0,0.5)) == pytest.approx(-0.01,rel=1e-12)

    def test_windowed(self,shock):
        p=flux.flux_profile(shock)
        assert flux.windowed_energy(p,1.0,0.1) == pytest.approx(p.deltas[1].weight,rel=1e-12)

    def test_mollified_converges(self,shock,shock_params):
        w=shock_params.l/100
        p=flux.flux_profile(genfun.mollify(shock,w))
        for d in flux.delta_terms(shock):
            assert flux.windowed_energy(p,d.location,5*w) == pytest.approx(d.weight,rel=1e-2)

class TestUncertaintyRelation:

    def test_admissible(self,shock_params):
        assert flux.qi_satisfied(shock_params)

    def test_violated(self):
        assert not flux.qi_satisfied(ShockParams(0.05,0.0,1.0))

    def test_zero_delay(self):
        assert flux.qi_satisfied(ShockParams(1.0,0.0,0.0))

class TestProfileOutput:
    """Sampled profiles and their CSV files."""

    def test_identity_grid(self,tmp_path):
        p=flux.flux_profile(genfun.make_identity())
        path=tmp_path/'identity.csv'
        side=p.to_csv(path,np.linspace(-1,1,201))
        df=pd.read_csv(path)
        assert list(df.columns) == ['x','density']
        assert len(df) == 201
        assert np.all(df['density'] == 0)
        assert json.loads(open(side).read()) == {"deltas":[]}

    def test_shock_sidecar(self,shock,tmp_path):
        path=tmp_path/'shock.csv'
        flux.flux_profile(shock).to_csv(path,np.linspace(-1,2,31))
        d=json.loads(open(deltas_file(path)).read())["deltas"]
        assert d[0] == [0.0,pytest.approx(-0.01,rel=1e-12)]
        assert d[1][1] == pytest.approx(0.0160511,rel=1e-5)

    def test_density_at_kink(self,shock):
        p=flux.flux_profile(shock)
        assert p.density(0.0) == pytest.approx(0.0,abs=1e-12)

    def test_sample_profile(self,exp_generator):
        df=flux.sample_profile(flux.flux_profile(exp_generator),[0.0,0.5])
        assert df['density'].tolist() == pytest.approx([1/(48*np.pi)]*2,rel=1e-6)
