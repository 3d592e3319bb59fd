import io
import json
import numpy as np
import pandas as pd
import pytest
from fluxgo import cli
from fluxgo.errors import QuadratureFailure

def run(capsys,*argv):
    code=cli.main(list(argv))
    out,err=capsys.readouterr()
    return code,out,err

class TestBound:
    """`fluxgo bound`"""

    def test_two_polarizations(self,capsys):
        code,out,_=run(capsys,'bound','--t-s','1')
        assert code == 0
        d=json.loads(out)
        assert d["bound_total"] == pytest.approx(0.0530516476972984,rel=1e-12)
        assert [s["name"] for s in d["steps"]][0] == 'optimal-delay'

    def test_one_polarization(self,capsys):
        code,out,_=run(capsys,'bound','--t-s','1','--polarizations','1')
        assert code == 0
        assert json.loads(out)["bound_total"] == pytest.approx(0.0265258,rel=1e-5)

    def test_nonpositive_time(self,capsys):
        code,out,err=run(capsys,'bound','--t-s','0')
        assert code == 2
        assert out == ''
        assert 'ConfigError' in err

    def test_csv(self,capsys):
        code,out,_=run(capsys,'bound','--t-s','2','--format','csv')
        df=pd.read_csv(io.StringIO(out))
        assert df['bound_total'][0] == pytest.approx(1/(12*np.pi),rel=1e-15)

class TestVerify:
    """`fluxgo verify`"""

    def test_chain(self,capsys):
        code,out,_=run(capsys,'verify','chain','--seed','42')
        d=json.loads(out)
        assert code == 0
        assert d["passed"] is True
        assert d["seed"] == 42
        assert all({"name","observed","tolerance","passed"} <= set(c) for c in d["checks"])

    def test_conformal(self,capsys):
        code,out,_=run(capsys,'verify','conformal','--seed','42')
        assert code == 0
        assert json.loads(out)["passed"]

    def test_unknown_suite(self,capsys):
        code,out,err=run(capsys,'verify','nosuch')
        assert code == 2
        assert out == ''

    def test_deterministic(self,capsys,tmp_path):
        a,b=tmp_path/'a.json',tmp_path/'b.json'
        run(capsys,'verify','conformal','--seed','7','--out',str(a))
        run(capsys,'verify','conformal','--seed','7','--out',str(b))
        assert a.read_bytes() == b.read_bytes()

class TestFlux:
    """`fluxgo flux`"""

    def test_identity_json(self,capsys,tmp_path):
        cfg=tmp_path/'identity.json'
        cfg.write_text('{"constructor": "identity"}')
        code,out,_=run(capsys,'flux',str(cfg),'--format','json','--range','-1','1','--n','201')
        d=json.loads(out)
        assert code == 0
        assert len(d["density"]) == 201
        assert max(abs(v) for v in d["density"]) == 0.0
        assert d["deltas"] == []

    def test_shock_csv(self,capsys,tmp_path,shock_json):
        out=tmp_path/'shock.csv'
        code,_,_=run(capsys,'flux',str(shock_json),'--range','-1','2','--n','31','--out',str(out))
        assert code == 0
        df=pd.read_csv(out)
        assert len(df) == 31
        assert np.max(np.abs(df['density'])) < 1e-12
        deltas=json.loads((tmp_path/'shock.deltas.json').read_text())["deltas"]
        assert deltas[0] == [0.0,pytest.approx(-0.01,rel=1e-12)]
        assert deltas[1][0] == 1.0
        assert deltas[1][1] == pytest.approx(0.0160511,rel=1e-5)

    def test_malformed(self,capsys,tmp_path):
        cfg=tmp_path/'bad.json'
        cfg.write_text('{"constructor": ')
        out=tmp_path/'bad.csv'
        code,_,err=run(capsys,'flux',str(cfg),'--out',str(out))
        assert code == 2
        assert not out.exists()
        assert 'ConfigError' in err

    def test_validation_failure(self,capsys,tmp_path):
        cfg=tmp_path/'gap.json'
        cfg.write_text(json.dumps({"segments":[{"interval":[-np.inf,0.0],"form":"affine","coeffs":[0,0,1]},
                                               {"interval":[0.0,np.inf],"form":"affine","coeffs":[0,1,1]}],
                                   "kinks":[0.0]}))
        out=tmp_path/'gap.csv'
        code,_,err=run(capsys,'flux',str(cfg),'--out',str(out))
        assert code == 2
        assert not out.exists()
        assert 'continuity' in err

    def test_csv_needs_out(self,capsys,shock_json):
        code,out,_=run(capsys,'flux',str(shock_json))
        assert code == 2
        assert out == ''

class TestSweep:
    """`fluxgo sweep`"""

    def test_bound_scaling(self,capsys):
        code,out,_=run(capsys,'sweep','bound','--param','t_s','--logspace','0.1','10','3')
        df=pd.read_csv(io.StringIO(out))
        assert code == 0
        assert list(df.columns) == ['t_s','polarizations','hbar','bound_per_pol','bound_total','status','error_kind']
        assert np.allclose(df['bound_total']*df['t_s'],1/(6*np.pi),rtol=1e-12,atol=0)
        assert list(df['status']) == ['ok']*3

    def test_chain_constant(self,capsys):
        code,out,_=run(capsys,'sweep','chain','--param','E_n','--values','1e-4,1e-3,1e-2')
        df=pd.read_csv(io.StringIO(out))
        assert code == 0
        v=df['bound_per_pol'].values
        assert np.max(np.abs(v/v[0]-1)) < 1e-12

    def test_flux_total(self,capsys):
        code,out,_=run(capsys,'sweep','flux-total','--param','E_n','--values','0.005,0.01')
        df=pd.read_csv(io.StringIO(out))
        assert code == 0
        assert np.allclose(df['total_energy'],df['closed_form'],rtol=1e-10,atol=0)

    def test_empty_values(self,capsys):
        code,out,_=run(capsys,'sweep','bound','--param','t_s','--values','')
        assert code == 2
        assert out == ''

    def test_prevalidation(self,capsys):
        code,out,_=run(capsys,'sweep','flux-total','--param','E_n','--values','0.01,0.05')
        assert code == 2
        assert out == ''

    def test_unknown_parameter(self,capsys):
        code,_,_=run(capsys,'sweep','bound','--param','E_n','--values','1')
        assert code == 2

    def test_fixed_inputs(self,capsys):
        code,out,_=run(capsys,'sweep','bound','--param','t_s','--values','1,2','--set','polarizations=1')
        df=pd.read_csv(io.StringIO(out))
        assert list(df['polarizations']) == [1,1]
        assert np.allclose(df['bound_total'],df['bound_per_pol'])

    def test_row_failure(self,capsys,monkeypatch):
        real=cli._row_outputs
        def flaky(command,inputs,seed):
            if inputs["t_s"] == 2.0: raise QuadratureFailure("no convergence")
            return real(command,inputs,seed)
        monkeypatch.setattr(cli,'_row_outputs',flaky)
        code,out,err=run(capsys,'sweep','bound','--param','t_s','--values','1,2,3')
        df=pd.read_csv(io.StringIO(out))
        assert code == 1
        assert list(df['status']) == ['ok','error','ok']
        assert df['error_kind'][1] == 'QuadratureFailure'
        assert np.isnan(df['bound_total'][1])
        assert 'QuadratureFailure' in err

    def test_deterministic(self,capsys,tmp_path):
        a,b=tmp_path/'a.csv',tmp_path/'b.csv'
        for p in [a,b]:
            run(capsys,'sweep','chain','--param','E_n','--logspace','1e-4','1e-2','5','--out',str(p))
        assert a.read_bytes() == b.read_bytes()

    def test_timing_column(self,capsys):
        code,out,_=run(capsys,'sweep','bound','--param','t_s','--values','1','--timing')
        assert 'wall_time' in pd.read_csv(io.StringIO(out)).columns

    def test_replay_row(self):
        rec=cli.run_row('bound',{"t_s":2.0,"polarizations":2,"hbar":1.0})
        assert rec.status == 'ok'
        assert rec.outputs["bound_total"] == pytest.approx(1/(12*np.pi),rel=1e-15)
