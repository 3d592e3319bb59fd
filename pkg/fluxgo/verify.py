#!/usr/bin/env python
# coding: utf-8
############################################
##Verification suites run by `fluxgo verify`. Each suite returns a CheckReport whose checks
##carry the observed value and the tolerance it is held to.
############################################
import time
import numpy as np
from fluxgo import utils,helpers,genfun,flux,modes,analysis
from fluxgo.types import (CheckReport,MobiusParams,ShockParams,Wavepacket,MinimizerProblem,SplitParams)
from fluxgo.errors import ConfigError,InadmissibleShock

def _rel(a,b,floor=1e-300):
    return abs(a-b)/max(abs(b),floor)

def random_moebius(rng,domain=(-0.5,1.5)):
    """
    Increasing Moebius parameters whose pole lies outside the domain.
    """
    lo,hi=domain
    while True:
        p=MobiusParams(a=1.0,b=rng.uniform(-0.5,0.5),c=rng.uniform(-1,1),d=rng.uniform(1,2))
        if p.pole is None or not (lo <= p.pole <= hi): return p

def random_shock(rng,hbar=1.0):
    """
    Admissible ShockParams with E_n in [1e-3,5e-2] and E_n*l below 0.9 of the limit.
    """
    E_n=rng.uniform(1e-3,5e-2)
    x_i=rng.uniform(-2,0)
    l=rng.uniform(0.05,0.9)*hbar/(12*np.pi*E_n)
    return ShockParams(E_n,x_i,x_i+l,hbar)

def random_minimizer_problem(rng,hbar=1.0,family_dim=8):
    """
    Admissible MinimizerProblem with L in [0.5,2] and E_n*L between 0.1 and 0.5 of the limit.
    """
    L=rng.uniform(0.5,2.0)
    E_n=rng.uniform(0.1,0.5)*hbar/(12*np.pi*L)
    return MinimizerProblem(E_n,L,hbar,family_dim)

def smooth_generators():
    """
    Smooth non-Moebius test generators with a point of evaluation each.
    """
    return [(genfun.make_numeric(np.exp,name='exp'),0.0),
            (genfun.make_numeric(lambda x: x+0.5*np.tanh(x),name='tanh-blend'),0.3),
            (genfun.make_numeric(lambda x: 2*x+np.sinh(x),name='sinh'),0.5),
            (genfun.make_numeric(lambda x: x+0.25*np.log(np.cosh(2*x))+0.5*x,name='smooth-step'),-0.2)]

########
def suite_modes(seed=0,hbar=1.0,verbose=False):
    rep=CheckReport('modes',seed)
    rng=utils.make_rng(seed)
    om=rng.uniform(0.1,10,1000)
    tt=rng.uniform(-10,10,1000)
    worst=max(abs(modes.mirror_mode(o,t,0.0,hbar)) for o,t in zip(om,tt))
    rep.add('mirror-boundary',worst,0.0)
    worst=max(abs(modes.mirror_mode(o,t,1e-12,hbar)) for o,t in zip(om,tt))
    rep.add('mirror-continuity',worst,1e-9)

    packets=[Wavepacket(c,0.1) for c in [2.0,4.0,6.0,8.0,10.0]]
    g=modes.gram_matrix(packets,hbar=hbar)
    rep.add('gram-plane',np.max(np.abs(g-np.eye(len(packets)))),1e-6)
    conj=[Wavepacket(c,0.1,conjugate=True) for c in [2.0,4.0]]
    mixed=max(abs(modes.kg_inner(a,b,hbar)) for a in conj for b in packets[:2])
    rep.add('gram-mixed-sector',mixed,1e-6)
    gc=modes.gram_matrix(conj,hbar=hbar)
    rep.add('gram-conjugate',np.max(np.abs(gc+np.eye(len(conj)))),1e-6)

    f=genfun.make_shock(ShockParams(0.01,-1.0,1.0,hbar))
    dpk=[Wavepacket(c,0.1,kind='deformed',generator=f) for c in [2.0,4.0,6.0]]
    gd=modes.gram_matrix(dpk,hbar=hbar)
    rep.add('gram-deformed',np.max(np.abs(gd-np.eye(len(dpk)))),1e-6)
    rep.add('one-point',max(abs(modes.one_point(p,0.3,hbar)) for p in packets),0.0)
    if verbose: print('modes suite: %d checks'%(len(rep.checks)))
    return rep

def suite_conformal(seed=0,hbar=1.0,verbose=False):
    rep=CheckReport('conformal',seed)
    rng=utils.make_rng(seed)
    ident=genfun.make_identity(hbar)
    w2=0.0
    w4=0.0
    wf=0.0
    for i in range(50):
        p=random_moebius(rng)
        f=genfun.make_moebius(p,(-0.5,1.5),hbar)
        xs=np.sort(rng.uniform(0,1,4))
        w2=max(w2,_rel(modes.two_point(f,xs[0],xs[1]),modes.two_point(ident,xs[0],xs[1])))
        w4=max(w4,_rel(modes.wick_four_point(f,xs),modes.wick_four_point(ident,xs)))
        wf=max(wf,abs(flux.flux_density(f,xs[2])))
    rep.add('two-point',w2,1e-10)
    rep.add('four-point',w4,1e-10)
    rep.add('moebius-flux',wf,1e-10)
    worst=0.0
    for i in range(10):
        pc=genfun.compose_moebius(random_moebius(rng),random_moebius(rng))
        while pc.pole is not None and 0.0 <= pc.pole <= 1.0:
            pc=genfun.compose_moebius(random_moebius(rng),random_moebius(rng))
        fc=genfun.make_moebius(pc,(0.0,1.0),hbar)
        worst=max(worst,abs(flux.schwarzian(fc,0.5)))
    rep.add('composition',worst,1e-10)
    return rep

def suite_oracle(seed=0,hbar=1.0,verbose=False):
    rep=CheckReport('oracle',seed)
    sp=SplitParams()
    for f,x in smooth_generators():
        f.hbar=hbar
        a=flux.flux_density(f,x)
        o=modes.point_split_flux(f,x,sp)
        rep.add('split-'+f.name,_rel(o,a,1e-12),1e-4)
        if verbose: print('oracle %s: analytic %.12g split %.12g'%(f.name,a,o))
    rep.add('split-exp-analytic',_rel(modes.point_split_flux(smooth_generators()[0][0],0.0,sp,hbar),
                                      hbar/(48*np.pi)),1e-4)
    rep.add('split-identity',abs(modes.point_split_flux(genfun.make_identity(hbar),0.7,sp)),1e-10)
    rng=utils.make_rng(seed)
    f=genfun.make_moebius(random_moebius(rng),(-0.5,1.5),hbar)
    rep.add('split-moebius',abs(modes.point_split_flux(f,0.4,sp)),1e-8)
    return rep

def suite_shock(seed=0,hbar=1.0,verbose=False):
    rep=CheckReport('shock',seed)
    rng=utils.make_rng(seed)
    wmax=0.0
    qi=True
    emin=np.inf
    etot=0.0
    for i in range(100):
        s=random_shock(rng,hbar)
        f=genfun.make_shock(s)
        d=flux.delta_terms(f)
        wmax=max(wmax,_rel(d[0].weight,-s.E_n),_rel(d[1].weight,analysis.compensation_lower_bound(s.E_n,s.l,hbar)))
        qi=qi and flux.qi_satisfied(s)
        if i < 10:
            e=flux.total_energy(flux.flux_profile(f))
            emin=min(emin,e)
            etot=max(etot,_rel(e,flux.shock_total_energy(s)))
    rep.add('kink-weights',wmax,1e-10)
    rep.add('uncertainty-relation',0.0 if qi else 1.0,0.0)
    rep.add('total-energy-positive',max(0.0,-emin),1e-9)
    rep.add('total-energy-closed-form',etot,1e-8)
    try:
        genfun.make_shock(ShockParams(0.01,0.0,hbar/(12*np.pi*0.01),hbar))
        rep.add('marginal-rejected',1.0,0.0)
    except InadmissibleShock:
        rep.add('marginal-rejected',0.0,0.0)

    s=ShockParams(0.01,0.0,1.0,hbar)
    f=genfun.make_shock(s)
    exact=[d.weight for d in flux.delta_terms(f)]
    errs=[]
    for w in [s.l/10,s.l/30,s.l/100]:
        p=flux.flux_profile(genfun.mollify(f,w))
        got=[flux.windowed_energy(p,x,5*w) for x in [s.x_i,s.x_f]]
        errs.append(max(_rel(g,e) for g,e in zip(got,exact)))
        if verbose: print('mollified width %g: relative error %.3e'%(w,errs[-1]))
    rep.add('mollifier-monotone',0.0 if errs[0] > errs[1] > errs[2] else 1.0,0.0)
    rep.add('mollifier-weights',errs[-1],1e-2)
    return rep

def suite_minimizer(seed=0,hbar=1.0,verbose=False):
    rep=CheckReport('minimizer',seed)
    p=MinimizerProblem(0.01,1.0,hbar)
    closed=analysis.min_compensation_energy(p)
    f=genfun.make_f_eta(p.E_n,p.L,hbar)
    weight=flux.delta_terms(f)[-1].weight
    rep.add('closed-vs-bound',_rel(closed,analysis.compensation_lower_bound(p.E_n,p.L,hbar)),1e-12)
    rep.add('closed-vs-delta',_rel(closed,weight),1e-12)
    rho=genfun.f_eta_rho(p.E_n,p.L,hbar)
    rep.add('casimir-shift',_rel(analysis.casimir_shift(f,p.L),-hbar/(12*np.pi)*rho*rho*p.L),1e-8)
    eta=analysis.eta_from_f(f,p.L)
    rep.add('eta-at-L',abs(eta.eta_L),1e-12)
    energy,res=analysis.numeric_min_oracle(p,seed=seed,par={"nstart":2},verbose=verbose)
    rep.add('oracle-above',max(0.0,closed-energy),1e-6)
    rep.add('oracle-within',max(0.0,energy/closed-1),5e-3)
    rng=utils.make_rng(seed)
    for i in range(3):
        q=random_minimizer_problem(rng,hbar)
        c=analysis.min_compensation_energy(q)
        e,_=analysis.numeric_min_oracle(q,seed=seed,par={"nstart":1})
        if verbose: print('random problem E_n=%g L=%g: oracle %.10g, closed %.10g'%(q.E_n,q.L,e,c))
        rep.add('dominance-%d'%(i),max(0.0,c-e,e-1.005*c),1e-6)
    return rep

def suite_chain(seed=0,hbar=1.0,verbose=False):
    rep=CheckReport('chain',seed)
    for t_s in [0.5,1.0,10.0]:
        c=analysis.gedanken_chain(t_s,hbar)
        rep.add('bound-%g'%(t_s),_rel(c.bound_per_pol,hbar/(12*np.pi*t_s)),1e-12)
        rep.add('soundness-%g'%(t_s),abs(2*c.bound_per_pol-analysis.switching_bound(t_s,hbar,2)),0.0)
        rep.add('energy-independence-%g'%(t_s),c.step('energy-independence')["spread"],1e-12)
    xs=np.linspace(0,0.9,10)*hbar/(12*np.pi*0.01)
    cb=analysis.compensation_curve(0.01,xs,hbar)
    rep.add('compensation-increasing',0.0 if np.all(np.diff(cb) > 0) else 1.0,0.0)
    sb=[analysis.switching_bound(t,hbar) for t in [0.1,1.0,10.0]]
    rep.add('switching-decreasing',0.0 if sb[0] > sb[1] > sb[2] else 1.0,0.0)
    return rep

SUITES={"modes":suite_modes,"conformal":suite_conformal,"oracle":suite_oracle,
        "shock":suite_shock,"minimizer":suite_minimizer,"chain":suite_chain}

def run_suite(name,seed=0,hbar=1.0,verbose=False):
    """
    Run one of helpers.verify_suites() and return its CheckReport.
    """
    if name not in helpers.verify_suites():
        raise ConfigError("unknown suite '%s', choose from %s"%(name,str(helpers.verify_suites())))
    tt0=time.time()
    rep=SUITES[name](seed=seed,hbar=hbar,verbose=verbose)
    if verbose: print('suite %s finished in %.1f s'%(name,time.time()-tt0))
    return rep
