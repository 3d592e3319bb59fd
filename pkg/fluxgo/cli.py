#!/usr/bin/env python
# coding: utf-8
"""
Command line of FluxGo.

Usage examples:
  # flux density of a serialized generating function, with the delta terms in a sidecar
  fluxgo flux shock.json --range -1 2 --n 301 --out shock.csv

  # one verification suite, JSON report on stdout
  fluxgo verify conformal --seed 42

  # the switching bound and the steps leading to it
  fluxgo bound --t-s 1 --polarizations 2

  # closed-form minimum against the direct-search oracle
  fluxgo minimize --E-n 0.01 --L 1 --nstart 4

  # the bound over a log grid of switching times
  fluxgo sweep bound --param t_s --logspace 0.1 10 3 --out bound.csv

Exit codes: 0 success, 1 a failed check or sweep row, 2 a configuration error.
"""
import sys
import json
import time
import argparse
import contextlib
import numpy as np
import pandas as pd
from multiprocessing import Pool
from fluxgo import __version__,utils,helpers,genfun,flux,analysis,verify
from fluxgo.types import ShockParams,MinimizerProblem,SweepConfig,RunRecord
from fluxgo.errors import FluxgoError,ConfigError,InadmissibleShock,OptimizerStall

#inputs of a sweep row that are not swept, per command.
SWEEP_DEFAULTS={"bound":{"t_s":1.0,"polarizations":2,"hbar":1.0},
                "chain":{"E_n":1e-3,"t_s":1.0,"hbar":1.0},
                "minimize":{"E_n":0.01,"L":1.0,"hbar":1.0,"family_dim":8,"nstart":2},
                "flux-total":{"E_n":0.01,"x_i":0.0,"x_f":1.0,"hbar":1.0}}
OUTPUT_COLUMNS={"bound":["bound_per_pol","bound_total"],
                "chain":["bound_per_pol","abs_xi"],
                "minimize":["closed_form","oracle","excess","eta_residual"],
                "flux-total":["total_energy","closed_form"]}
INTEGER_INPUTS=["polarizations","family_dim","nstart"]

def _diag(msg):
    print(msg,file=sys.stderr)

def _emit(text,out=None):
    """
    Write text to out, or to stdout when out is None. text is complete before the file opens.
    """
    if out is None:
        sys.stdout.write(text)
        if not text.endswith('\n'): sys.stdout.write('\n')
    else:
        with open(out,'w') as fp:
            fp.write(text)

def _json(d):
    return json.dumps(d,indent=2)+'\n'

def _csv(df):
    return df.to_csv(index=False,float_format='%.17g')

def _quiet():
    """
    Progress prints of the library go to stderr so stdout carries only reports.
    """
    return contextlib.redirect_stdout(sys.stderr)

def _format(args,default):
    if args.format is None: return default
    return args.format

########
def cmd_flux(args):
    try:
        f=genfun.load(args.config)
    except FluxgoError as e:
        _diag('%s: %s'%(e.kind,str(e)))
        return 2
    if args.hbar is not None: f.hbar=float(args.hbar)
    report=genfun.validate(f)
    if not report.passed:
        _diag(_json(report.to_dict()))
        return 2
    lo,hi=args.range
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo) or args.n < 2:
        raise ConfigError("the grid needs finite lo < hi and at least 2 points.")
    grid=np.linspace(lo,hi,args.n)
    dlo,dhi=f.domain
    if grid[0] < dlo or grid[-1] > dhi:
        raise ConfigError("the grid [%g,%g] leaves the domain %s."%(lo,hi,str(f.domain)))
    p=flux.flux_profile(f)
    fmt=_format(args,'csv')
    if fmt == 'csv':
        if args.out is None:
            raise ConfigError("--out is required for csv output; the deltas go to a sidecar.")
        side=p.to_csv(args.out,grid)
        if args.verbose: _diag('wrote %s and %s'%(args.out,side))
    else:
        d={"generator":f.name,"hbar":p.hbar,"x":[float(x) for x in grid],
           "density":[float(v) for v in p.sample(grid)],
           "deltas":[[d.location,d.weight] for d in p.deltas]}
        _emit(_json(d),args.out)
    return 0

def cmd_verify(args):
    hbar=1.0 if args.hbar is None else args.hbar
    with _quiet():
        rep=verify.run_suite(args.suite,seed=args.seed,hbar=hbar,verbose=args.verbose)
    if _format(args,'json') == 'csv':
        _emit(_csv(pd.DataFrame(rep.checks,columns=["name","observed","tolerance","passed"])),args.out)
    else:
        _emit(_json(rep.to_dict()),args.out)
    if not rep.passed:
        for c in rep.checks:
            if not c["passed"]: _diag('check %s failed: %.6g > %.1e'%(c["name"],c["observed"],c["tolerance"]))
        return 1
    return 0

def cmd_bound(args):
    hbar=1.0 if args.hbar is None else args.hbar
    c=analysis.gedanken_chain(args.t_s,hbar,args.polarizations)
    if _format(args,'json') == 'csv':
        df=pd.DataFrame([{"t_s":c.t_s,"hbar":c.hbar,"polarizations":c.polarizations,
                          "bound_per_pol":c.bound_per_pol,"bound_total":c.bound_total}])
        _emit(_csv(df),args.out)
    else:
        _emit(_json(c.to_dict()),args.out)
    return 0

def cmd_minimize(args):
    hbar=1.0 if args.hbar is None else args.hbar
    p=MinimizerProblem(args.E_n,args.L,hbar,args.dim)
    if not p.admissible:
        raise ConfigError("E_n*L must stay below hbar/(12 pi).")
    status=0
    with _quiet():
        try:
            _,res=analysis.numeric_min_oracle(p,seed=args.seed,par={"nstart":args.nstart},
                                              nproc=args.nproc,verbose=args.verbose)
            d=res.to_dict()
            d["status"]="ok"
        except OptimizerStall as e:
            if e.best is None: raise
            d=e.best.to_dict()
            d["status"]="stalled"
            _diag('%s: %s'%(e.kind,str(e)))
            status=1
    if _format(args,'json') == 'csv':
        row={k:v for k,v in d.items() if k not in ["problem","theta"]}
        row.update(d["problem"])
        _emit(_csv(pd.DataFrame([row])),args.out)
    else:
        _emit(_json(d),args.out)
    return status

########
def check_inputs(command,inputs):
    """
    Raise ConfigError when a sweep row could never run, so a sweep is rejected before its
    first row.
    """
    if command == 'bound':
        if not inputs["t_s"] > 0: raise ConfigError("t_s must be positive.")
        if inputs["polarizations"] < 1: raise ConfigError("polarizations must be at least 1.")
        if not inputs["hbar"] > 0: raise ConfigError("hbar must be positive.")
    elif command == 'chain':
        if not (inputs["E_n"] > 0 and inputs["t_s"] > 0 and inputs["hbar"] > 0):
            raise ConfigError("E_n, t_s and hbar must be positive.")
        if not utils.admissible(inputs["E_n"],inputs["t_s"],inputs["hbar"]):
            raise ConfigError("E_n=%g leaves no admissible delay for t_s=%g."%(inputs["E_n"],inputs["t_s"]))
    elif command == 'minimize':
        p=MinimizerProblem(inputs["E_n"],inputs["L"],inputs["hbar"],inputs["family_dim"])
        if not p.admissible: raise ConfigError("E_n*L must stay below hbar/(12 pi).")
        if not p.L > 0: raise ConfigError("L must be positive.")
    elif command == 'flux-total':
        s=ShockParams(inputs["E_n"],inputs["x_i"],inputs["x_f"],inputs["hbar"])
        if not s.admissible: raise ConfigError("the shock E_n=%g, l=%g is inadmissible."%(s.E_n,s.l))
    else:
        raise ConfigError("unknown sweep command '%s'"%(command))

def _row_outputs(command,inputs,seed):
    if command == 'bound':
        b=analysis.switching_bound(inputs["t_s"],inputs["hbar"],inputs["polarizations"])
        return {"bound_per_pol":b/inputs["polarizations"],"bound_total":b}
    if command == 'chain':
        E,t,hbar=inputs["E_n"],inputs["t_s"],inputs["hbar"]
        a=hbar/(12*np.pi*E)-t
        return {"bound_per_pol":analysis.compensation_lower_bound(E,a,hbar),"abs_xi":a}
    if command == 'minimize':
        p=MinimizerProblem(inputs["E_n"],inputs["L"],inputs["hbar"],inputs["family_dim"])
        _,res=analysis.numeric_min_oracle(p,seed=seed,par={"nstart":inputs["nstart"]})
        return {"closed_form":res.closed_form,"oracle":res.energy,"excess":res.excess,
                "eta_residual":res.eta_residual}
    s=ShockParams(inputs["E_n"],inputs["x_i"],inputs["x_f"],inputs["hbar"])
    e=flux.total_energy(flux.flux_profile(genfun.make_shock(s)))
    return {"total_energy":e,"closed_form":flux.shock_total_energy(s)}

def run_row(command,inputs,seed=0):
    """
    Run one sweep row. Library errors are recorded in the RunRecord, never raised, so a row
    replays standalone from its inputs and seed.
    """
    tt0=time.time()
    try:
        outputs=_row_outputs(command,inputs,seed)
        rec=RunRecord(inputs,outputs)
    except FluxgoError as e:
        rec=RunRecord(inputs,None,status='error',error_kind=e.kind)
    rec.wall_time=time.time()-tt0
    return rec

def parse_values(values=None,logspace=None):
    """
    Sweep values from a comma list '0.1,1,10' or a log range (start,stop,num).
    """
    if logspace is not None:
        a,b,n=logspace
        if not (a > 0 and b > 0) or int(n) != n:
            raise ConfigError("--logspace needs positive ends and an integer count.")
        return list(np.geomspace(a,b,int(n)))
    if values is None: raise ConfigError("give --values or --logspace.")
    try:
        return [float(v) for v in values.split(',') if v.strip()]
    except ValueError:
        raise ConfigError("cannot read sweep values '%s'."%(values))

def _parse_set(items):
    fixed=dict()
    for item in items or []:
        if '=' not in item: raise ConfigError("--set expects name=value, got '%s'."%(item))
        k,v=item.split('=',1)
        try:
            fixed[k.strip()]=float(v)
        except ValueError:
            raise ConfigError("cannot read the value of '%s'."%(item))
    return fixed

def _inputs(command,fixed,parameter,value):
    inputs=dict(SWEEP_DEFAULTS[command])
    for k,v in list(fixed.items())+[(parameter,value)]:
        if k not in inputs: raise ConfigError("'%s' is not an input of %s."%(k,command))
        inputs[k]=v
    for k in INTEGER_INPUTS:
        if k in inputs:
            if inputs[k] != int(inputs[k]): raise ConfigError("%s must be an integer."%(k))
            inputs[k]=int(inputs[k])
    for k,v in inputs.items(): inputs[k]=v if k in INTEGER_INPUTS else float(v)
    return inputs

def cmd_sweep(args):
    command=args.command
    if command not in helpers.sweep_commands():
        raise ConfigError("unknown sweep command '%s', choose from %s"%(command,str(list(helpers.sweep_commands()))))
    if args.param not in helpers.sweep_commands(command):
        raise ConfigError("%s sweeps over %s, not '%s'."%(command,str(helpers.sweep_commands(command)),args.param))
    fixed=_parse_set(args.set)
    if args.hbar is not None and 'hbar' not in fixed: fixed["hbar"]=args.hbar
    cfg=SweepConfig(args.param,parse_values(args.values,args.logspace),command,args.out,args.seed,fixed)
    rows=[_inputs(command,cfg.fixed,cfg.parameter,v) for v in cfg.values]
    for r in rows: check_inputs(command,r)

    tt0=time.time()
    arglist=[(command,r,cfg.seed) for r in rows]
    if args.nproc > 1:
        with Pool(processes=args.nproc) as pool:
            records=pool.starmap(run_row,arglist)
    else:
        records=[run_row(*a) for a in arglist]
    if args.verbose: _diag('sweep of %d rows in %.1f s'%(len(records),time.time()-tt0))

    columns=list(rows[0].keys())+OUTPUT_COLUMNS[command]+["status","error_kind"]
    if args.timing: columns.append("wall_time")
    table=[r.to_row(args.timing) for r in records]
    if _format(args,'csv') == 'csv':
        _emit(_csv(pd.DataFrame(table,columns=columns)),cfg.output_path)
    else:
        _emit(_json({"command":command,"parameter":cfg.parameter,"seed":cfg.seed,"rows":table}),cfg.output_path)
    failed=[r for r in records if r.status != 'ok']
    for r in failed: _diag('row %s=%r failed: %s'%(cfg.parameter,r.inputs[cfg.parameter],r.error_kind))
    return 1 if len(failed) > 0 else 0

########
def build_parser():
    common=argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar",type=float,default=None,help="Planck constant, default 1.0.")
    common.add_argument("--seed",type=int,default=0,help="seed of randomized checks and starts.")
    common.add_argument("--out",default=None,help="output file, default stdout.")
    common.add_argument("--format",choices=helpers.output_formats(),default=None,help="report format.")
    common.add_argument("--verbose",action="store_true",help="progress on stderr.")

    ap=argparse.ArgumentParser(prog="fluxgo",description="Energy flux of squeezed states in 1+1 dimensions.")
    ap.add_argument("--version",action="version",version="%(prog)s "+__version__)
    sub=ap.add_subparsers(dest="cmd",required=True)

    p=sub.add_parser("flux",parents=[common],help="sample the flux of a serialized generating function.")
    p.add_argument("config",help="generating-function JSON file.")
    p.add_argument("--range",nargs=2,type=float,default=[-1.0,1.0],metavar=("LO","HI"))
    p.add_argument("--n",type=int,default=201,help="grid points.")
    p.set_defaults(func=cmd_flux)

    p=sub.add_parser("verify",parents=[common],help="run a verification suite.")
    p.add_argument("suite",help="one of "+", ".join(helpers.verify_suites()))
    p.set_defaults(func=cmd_verify)

    p=sub.add_parser("bound",parents=[common],help="the switching bound and its derivation.")
    p.add_argument("--t-s",dest="t_s",type=float,required=True,help="switching time.")
    p.add_argument("--polarizations",type=int,default=2)
    p.set_defaults(func=cmd_bound)

    p=sub.add_parser("minimize",parents=[common],help="minimum compensating energy and its oracle.")
    p.add_argument("--E-n",dest="E_n",type=float,required=True,help="negative shock energy.")
    p.add_argument("--L",dest="L",type=float,required=True,help="quiet length after the shock.")
    p.add_argument("--dim",type=int,default=8,help="parameters of the oracle family.")
    p.add_argument("--nstart",type=int,default=4,help="oracle starts.")
    p.add_argument("--nproc",type=int,default=1,help="worker processes.")
    p.set_defaults(func=cmd_minimize)

    p=sub.add_parser("sweep",parents=[common],help="repeat a command over parameter values.")
    p.add_argument("command",help="one of "+", ".join(helpers.sweep_commands()))
    p.add_argument("--param",required=True,help="swept input.")
    p.add_argument("--values",default=None,help="comma separated values.")
    p.add_argument("--logspace",nargs=3,type=float,default=None,metavar=("START","STOP","NUM"))
    p.add_argument("--set",action="append",default=None,help="fixed input name=value, repeatable.")
    p.add_argument("--nproc",type=int,default=1,help="worker processes.")
    p.add_argument("--timing",action="store_true",help="add the wall_time column.")
    p.set_defaults(func=cmd_sweep)
    return ap

def main(argv=None) -> int:
    args=build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        _diag('%s: %s'%(e.kind,str(e)))
        return 2
    except InadmissibleShock as e:
        _diag('%s: %s'%(e.kind,str(e)))
        return 2
    except FluxgoError as e:
        _diag('%s: %s'%(e.kind,str(e)))
        return 1

if __name__ == "__main__":
    raise SystemExit(main())
