#!/usr/bin/env python
# coding: utf-8
############################################
##Quantum-inequality bounds, the switching thought experiment and the constrained
##minimum of the compensating energy with its direct-search oracle.
############################################
import time
import numpy as np
from multiprocessing import Pool
from scipy.optimize import minimize
from fluxgo import utils,genfun,flux
from fluxgo.types import (GedankenScenario,MinimizerProblem,ChainReport,EtaReport,
                          ScenarioTimeline,OracleResult,LogSlopeSpline)
from fluxgo.errors import (ConfigError,InadmissibleShock,DomainViolation,
                           ScenarioOrderViolation,OptimizerStall)

def qi_max_negative_energy(l,hbar=1.0):
    """
    Largest negative shock energy allowed before compensation after a delay l: hbar/(12 pi l).
    """
    if not l > 0: raise ConfigError("l must be positive, got "+str(l))
    return hbar/(12*np.pi*l)

def compensation_lower_bound(E_n,abs_xi,hbar=1.0):
    """
    Minimum positive energy following a negative shock E_n after a delay |x_i|:
    E_n/(1-(12 pi/hbar)*E_n*|x_i|).
    """
    if E_n < 0 or abs_xi < 0: raise ConfigError("E_n and |x_i| must be non-negative.")
    k=12*np.pi/hbar
    if not utils.admissible(E_n,abs_xi,hbar):
        raise InadmissibleShock("E_n*|x_i|=%g reaches hbar/(12 pi)=%g."%(E_n*abs_xi,1/k))
    return E_n/(1-k*E_n*abs_xi)

def compensation_curve(E_n,abs_xi_grid,hbar=1.0):
    """
    compensation_lower_bound on a grid of delays.
    """
    return np.array([compensation_lower_bound(E_n,a,hbar) for a in abs_xi_grid])

def switching_bound(t_s,hbar=1.0,polarizations=2):
    """
    Lower bound polarizations*hbar/(12 pi t_s) on the energy to operate a switch for a time t_s.
    """
    if not t_s > 0: raise ConfigError("t_s must be positive, got "+str(t_s))
    if int(polarizations) < 1: raise ConfigError("polarizations must be at least 1.")
    return int(polarizations)*hbar/(12*np.pi*t_s)

def gedanken_chain(t_s,hbar=1.0,polarizations=2,E_grid=None):
    """
    The derivation of the switching bound, step by step.

    1. For fixed x_f and E_n the compensation bound grows with |x_i|; admissibility caps it at
       |x_i| = hbar/(12 pi E_n) - x_f.
    2. Substituting that delay gives hbar/(12 pi x_f) for every E_n, checked on E_grid.
    3. x_f >= t_s, so the smallest exit gives hbar/(12 pi t_s) per polarization.
    4. Independent polarizations add.

    ===parameters===
    t_s: switching time.
    hbar: Planck constant.
    polarizations: number of independent fields.
    E_grid: shock energies for step 2, default logspace(-4,-2,9)*hbar/t_s.

    ===RETURNS===
    report: ChainReport. The witness is the limiting scenario; the supremum is approached
        but not attained since the marginal shock is inadmissible.
    """
    if not t_s > 0: raise ConfigError("t_s must be positive, got "+str(t_s))
    if E_grid is None: E_grid=np.logspace(-4,-2,9)*hbar/t_s
    E_grid=np.asarray(E_grid,dtype=np.float64)
    x_f=float(t_s)
    delays=hbar/(12*np.pi*E_grid)-x_f
    if np.any(delays < 0):
        raise ConfigError("E_grid holds energies above hbar/(12 pi t_s); no delay is admissible.")
    values=np.array([compensation_lower_bound(E,a,hbar) for E,a in zip(E_grid,delays)])
    per_pol=hbar/(12*np.pi*x_f)
    spread=float(np.max(np.abs(values/per_pol-1)))
    total=switching_bound(t_s,hbar,polarizations)
    mid=len(E_grid)//2
    witness={"t_s":float(t_s),"x_f":x_f,"x_i":-float(delays[mid]),"E_n":float(E_grid[mid]),
             "polarizations":int(polarizations),"attained":False}
    steps=[{"name":"optimal-delay","value":[float(a) for a in delays],"relation":"abs_xi = hbar/(12 pi E_n) - x_f"},
           {"name":"energy-independence","value":[float(v) for v in values],"spread":spread,
            "relation":"E_n/(1-12 pi E_n abs_xi/hbar) = hbar/(12 pi x_f)"},
           {"name":"minimal-exit","value":per_pol,"relation":"x_f = t_s"},
           {"name":"polarizations","value":total,"relation":"bound_total = polarizations * bound_per_pol"}]
    return ChainReport(float(t_s),float(hbar),int(polarizations),per_pol,total,witness,steps)

########
def _check_scenario(s):
    if not s.t_s > 0:
        raise ScenarioOrderViolation("t_s must be positive, got %g."%(s.t_s))
    if not (s.x_i <= 0 <= s.t_s <= s.x_f):
        raise ScenarioOrderViolation("need x_i <= 0 <= t_s <= x_f, got x_i=%g, t_s=%g, x_f=%g."%(s.x_i,s.t_s,s.x_f))
    if s.E_n < 0 or s.polarizations < 1 or not s.hbar > 0:
        raise ScenarioOrderViolation("E_n must be non-negative, polarizations >= 1 and hbar > 0.")
    if not utils.admissible(s.E_n,s.x_f-s.x_i,s.hbar):
        raise ScenarioOrderViolation("E_n*(x_f-x_i)=%g reaches hbar/(12 pi)."%(s.E_n*(s.x_f-s.x_i)))

def shock_scenario_profile(s):
    """
    Right-moving flux after the switch, as a description: the reflected negative shock at
    x- = x_i, the unknown switching flux T_s on [0,t_s] and the bound on its integral.
    """
    _check_scenario(s)
    return {"deltas":[[s.x_i,-s.E_n]],
            "quiet_interval":[s.x_i,0.0],
            "switch_window":[0.0,s.t_s],
            "T_s":"unknown",
            "constraint":{"integral_T_s_min":compensation_lower_bound(s.E_n,abs(s.x_i),s.hbar)}}

def scenario_timeline(s):
    """
    Events of a switching scenario in time order (ties keep the order reflection, switch-on,
    switch-off, transmission) with light-cone coordinates, plus the output profile.

    ===RETURNS===
    timeline: ScenarioTimeline with .events and .profile.
    """
    _check_scenario(s)
    events=[{"name":"reflection","t":s.x_i,"x":0.0,"x_plus":s.x_i,"x_minus":s.x_i,
             "note":"negative left-mover at x+=x_i reflects into a right-mover at x-=x_i"},
            {"name":"switch-on","t":0.0,"x":0.0,"x_plus":0.0,"x_minus":0.0,
             "note":"switching starts; undesired right-moving flux T_s may appear"},
            {"name":"switch-off","t":s.t_s,"x":0.0,"x_plus":s.t_s,"x_minus":s.t_s,
             "note":"switching ends"},
            {"name":"transmission","t":s.x_f,"x":0.0,"x_plus":s.x_f,"x_minus":s.x_f,
             "note":"positive left-mover at x+=x_f passes the mirror position"}]
    order=sorted(range(len(events)),key=lambda i: (events[i]["t"],i))
    return ScenarioTimeline(s,[events[i] for i in order],shock_scenario_profile(s))

########
def min_compensation_energy(p):
    """
    Closed-form minimum E_n/(1-(12 pi/hbar)*E_n*L) of the positive energy after a negative
    shock E_n when no flux may appear for a length L.
    """
    return compensation_lower_bound(p.E_n,p.L,p.hbar)

def eta_from_f(f,L,npts=401):
    """
    eta(x)=1/f'(x)-1 for x<L, checking that f is the identity beyond L (beyond L plus the
    mollifier width for smoothed functions).

    ===RETURNS===
    report: EtaReport with the grid over [min(kinks,0)-max(1,L),L] and eta on it.
    """
    L=float(L)
    right=L+f.smoothing
    beyond=right+np.linspace(0,max(1.0,abs(L)),9)[1:]
    if np.any(beyond > f.domain[1]) or right < f.domain[0]:
        raise DomainViolation("%s is not defined beyond L=%g."%(f.name,L))
    dev=np.abs(f(beyond)-beyond)/np.maximum(1.0,np.abs(beyond))
    if np.max(dev) > 1e-9 or np.max(np.abs(f.derivative(beyond,1)-1)) > 1e-9:
        raise DomainViolation("%s is not the identity beyond L=%g (deviation %.3e)."%(f.name,L,float(np.max(dev))))
    lo=min(list(f.kinks)+[0.0])-max(1.0,abs(L))
    lo=max(lo,f.domain[0])
    grid=np.linspace(lo,L,npts)
    eta=1.0/f.derivative(grid,1,side='left')-1.0
    eta_L=1.0/f.derivative(right,1)-1.0
    return EtaReport(f,L,grid,eta,eta_L)

def casimir_shift(f,L,hbar=None,rtol=utils.QUAD_RTOL,atol=utils.QUAD_ATOL):
    """
    c-number term -(hbar/12 pi)*int (d/dx sqrt(1+eta(x)Theta(L-x)))^2 dx of the constrained
    energy rewritten in the deformed basis. With sqrt(1+eta)=f'^(-1/2) the integrand is
    (f''/(2 f'^(3/2)))^2 up to L (L plus the mollifier width for smoothed functions).
    """
    if hbar is None: hbar=f.hbar
    rep=eta_from_f(f,L)
    if abs(rep.eta_L) > 1e-9:
        raise DomainViolation("eta(L)=%g, expected 0."%(rep.eta_L))
    upper=float(L)+f.smoothing
    lo=max(f.core_interval()[0],f.domain[0])
    if not upper > lo: return 0.0
    def integrand(x):
        f1=f.derivative(x,1)
        f2=f.derivative(x,2)
        g=0.5*f2/f1**1.5
        return g*g
    breaks=[lo]+[b for b in f.breakpoints() if lo < b < upper]+[upper]
    val,_=utils.integrate_pieces(integrand,breaks,rtol=rtol,atol=atol)
    return -hbar/(12*np.pi)*val

########
#default settings of the direct-search oracle.
ORACLE_PAR0={"family_dim":8,"nstart":4,"penalty0":1e3,"penalty_growth":10,"nstage":4,
             "tol":1e-6,"stall_tol":1e-4,"xtol":1e-10,"ftol":1e-13,"maxfev":20000,
             "perturbation":0.1,"improvement":1e-3}

def f_eta_parameters(E_n,L,family_dim=8,hbar=1.0):
    """
    Oracle parameters theta=[s'(0), s'' at the knots] sampled from the closed-form minimizer,
    where s'=2 rho/(1+rho (L-x)) and s''=s'^2/2.
    """
    rho=genfun.f_eta_rho(E_n,L,hbar)
    knots=np.linspace(0,L,family_dim-1)
    s1=2*rho/(1+rho*(L-knots))
    return np.concatenate([[s1[0]],0.5*s1*s1])

def _oracle_terms(theta,p):
    """
    (compensating energy, eta residual, L^3*int S^2) of the log-slope generator with
    parameters theta. The compensating energy is the total energy less the required -E_n.
    S=s''-s'^2/2 is a quartic on each knot interval, integrated exactly by 5-point rules.
    """
    sp=LogSlopeSpline(p.L,theta[0],theta[1:])
    c=p.hbar/(24*np.pi)
    z,wz=utils.gauss_legendre(5)
    h=sp.h[:,None]
    t=0.5*h*(z[None,:]+1)
    j=np.repeat(np.arange(len(sp.h))[:,None],len(z),axis=1)
    S=sp._local(j,t,2)-0.5*sp._local(j,t,1)**2
    w=0.5*h*wz[None,:]
    w0=-c*sp.slope0
    wL=c*sp.s1k[-1]
    energy=w0+wL-c*np.sum(w*S)+p.E_n
    eta=(w0+p.E_n)/p.E_n
    return energy,eta,p.L**3*np.sum(w*S*S)

def _run_start(theta0,p,par):
    theta=np.array(theta0,dtype=np.float64)
    e_prev=_oracle_terms(theta,p)[0]
    steps=0
    nfev=0
    mu=par["penalty0"]
    for k in range(par["nstage"]):
        def objective(th,mu=mu):
            e,eta,s2=_oracle_terms(th,p)
            return e/p.E_n+mu*(eta*eta+s2)
        res=minimize(objective,theta,method='Powell',
                     options={"xtol":par["xtol"],"ftol":par["ftol"],"maxfev":par["maxfev"]})
        theta=res.x
        nfev+=res.nfev
        e=_oracle_terms(theta,p)[0]
        if e < e_prev*(1-par["improvement"]): steps+=1
        e_prev=e
        mu*=par["penalty_growth"]
    mu/=par["penalty_growth"]
    e,eta,s2=_oracle_terms(theta,p)
    return e/p.E_n+mu*(eta*eta+s2),theta,steps,nfev

def numeric_min_oracle(p,seed=0,x0=None,par=None,nproc=1,verbose=False):
    """
    Independent direct-search estimate of the minimum compensating energy.

    Candidates are log-slope generators: f'=exp(s) on [0,L] with s'' piecewise linear through
    family_dim-1 uniform knots, identity for x>L and an affine tail for x<0, so every
    candidate is monotone. The energy minimized is the sum of its two kink weights and its
    smooth flux, plus E_n. The constraints (weight -E_n at x=0, no smooth flux before L)
    enter as a quadratic penalty ramped by penalty_growth over nstage stages, minimized with
    Powell's method from x0 (or the default start when x0 is None) and nstart-1 seeded
    perturbations of the default start.

    ===parameters===
    p: MinimizerProblem, family_dim >= 3.
    seed: seed of the perturbed starts.
    x0: optional first start [s'(0), s'' at the knots], replacing the default one.
    par: dict overriding ORACLE_PAR0.
    nproc: worker processes for the starts.
    verbose: print progress.

    ===RETURNS===
    energy: compensating energy of the best candidate, flux.total_energy of its generator
        plus E_n.
    result: OracleResult with the parameters, residuals and improvement steps.
    """
    if par is None: par=dict()
    par={**ORACLE_PAR0,**par}
    dim=p.family_dim
    if dim < 3: raise ConfigError("family_dim must be at least 3, got "+str(dim))
    if not p.L > 0: raise ConfigError("the oracle needs L > 0, got "+str(p.L))
    closed=min_compensation_energy(p)
    if p.E_n == 0:
        theta=np.zeros(dim)
        return 0.0,OracleResult(p,0.0,theta,closed,seed=seed,nstart=0)
    tt0=time.time()
    beta=24*np.pi*p.E_n/p.hbar
    base=np.concatenate([[beta],0.5*beta*beta*np.ones(dim-1)])
    starts=[base if x0 is None else np.asarray(x0,dtype=np.float64)]
    for rng in utils.spawn_rngs(seed,max(par["nstart"]-1,0)):
        starts.append(base*(1+par["perturbation"]*rng.standard_normal(dim)))
    args=[(s,p,par) for s in starts]
    if nproc > 1:
        with Pool(processes=nproc) as pool:
            results=pool.starmap(_run_start,args)
    else:
        results=[_run_start(*a) for a in args]
    if verbose:
        for i,r in enumerate(results):
            print('start %d: objective %.12g after %d evaluations'%(i,r[0],r[3]))
    best=min(results,key=lambda r: (r[0],tuple(r[1])))
    J,theta,steps,_=best
    nfev=sum(r[3] for r in results)
    _,eta,s2=_oracle_terms(theta,p)
    g=genfun.make_logslope(theta[1:],theta[0],p.L,p.hbar)
    energy=flux.total_energy(flux.flux_profile(g))+p.E_n
    result=OracleResult(p,energy,theta,closed,objective=J,eta_residual=abs(eta),
                        flux_residual=np.sqrt(s2),improvement_steps=steps,nfev=nfev,
                        seed=seed,nstart=len(starts))
    if verbose: print('oracle: %.12g vs closed form %.12g in %.1f s'%(energy,closed,time.time()-tt0))
    if abs(eta) > par["stall_tol"]:
        raise OptimizerStall("delta-weight residual %.3e above %.1e."%(abs(eta),par["stall_tol"]),best=result)
    return energy,result
