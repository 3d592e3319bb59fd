#!/usr/bin/env python
# coding: utf-8
############################################
##Renormalized energy flux of a squeezed state from its generating function:
##Schwarzian density, delta terms at kinks and total energy.
############################################
import numpy as np
import pandas as pd
from fluxgo import utils
from fluxgo.types import FluxProfile,DeltaTerm
from fluxgo.errors import KinkEvaluation,NonMonotone

#points closer than KINK_TOL*max(1,|x|) to a kink count as the kink.
KINK_TOL=1e-12

def _hbar(f,hbar):
    if hbar is None: return f.hbar
    return float(hbar)

def _check_kinks(f,x):
    if len(f.kinks) == 0: return
    k=np.asarray(f.kinks)
    d=np.min(np.abs(x[:,None]-k[None,:]),axis=1)
    near=d <= KINK_TOL*np.maximum(1.0,np.abs(x))
    if np.any(near):
        raise KinkEvaluation("x=%r is a kink of %s; use delta_terms there."%(float(x[near][0]),f.name))

def schwarzian_from_derivs(f1,f2,f3):
    """
    S=f'''/f'-1.5*(f''/f')^2 from the first three derivatives.
    """
    r=f2/f1
    return f3/f1-1.5*r*r

def schwarzian(f,x):
    """
    Schwarzian derivative of f at x.

    ===parameters===
    f: GeneratingFunction.
    x: point or array of points, none of them a kink.

    ===RETURNS===
    S: f'''/f'-1.5*(f''/f')^2.
    """
    scalar=np.ndim(x) == 0
    x=np.atleast_1d(np.asarray(x,dtype=np.float64))
    _check_kinks(f,x)
    _,f1,f2,f3=f.derivs(x)
    if np.any(f1 <= 0):
        raise NonMonotone("f'(%r)=%g is not positive."%(float(x[f1 <= 0][0]),float(f1[f1 <= 0][0])))
    s=schwarzian_from_derivs(f1,f2,f3)
    if scalar: return float(s[0])
    return s

def flux_density(f,x,hbar=None):
    """
    Flux density -(hbar/24 pi)*S(f)(x). hbar defaults to the one carried by f.
    """
    return -_hbar(f,hbar)/(24*np.pi)*schwarzian(f,x)

def delta_terms(f,hbar=None):
    """
    Delta terms of the flux at the kinks of f, with weight -(hbar/24 pi)*(f''(x+)-f''(x-))/f'(x).

    ===RETURNS===
    deltas: list of DeltaTerm in kink order.
    """
    hbar=_hbar(f,hbar)
    out=[]
    for k in f.kinks:
        _,f1,f2l,_=f.derivs_left(k)
        _,_,f2r,_=f.derivs_right(k)
        if not f1 > 0: raise NonMonotone("f'(%r)=%g is not positive."%(k,f1))
        out.append(DeltaTerm(k,-hbar/(24*np.pi)*(f2r-f2l)/f1))
    return out

def flux_profile(f,hbar=None):
    """
    Flux profile of f: the density away from kinks plus the delta terms. At a kink the
    density callable returns the mean of the two one-sided values.
    """
    hbar=_hbar(f,hbar)
    deltas=delta_terms(f,hbar)
    kinks=set(f.kinks)
    c=-hbar/(24*np.pi)
    def density(x):
        x=float(x)
        if x in kinks:
            vals=[]
            for d in [f.derivs_left(x),f.derivs_right(x)]:
                vals.append(c*schwarzian_from_derivs(d[1],d[2],d[3]))
            return 0.5*(vals[0]+vals[1])
        _,f1,f2,f3=f.derivs(x)
        if not f1 > 0: raise NonMonotone("f'(%r)=%g is not positive."%(x,f1))
        return c*schwarzian_from_derivs(f1,f2,f3)
    return FluxProfile(f,density,deltas,hbar)

def total_energy(p,interval=None,rtol=utils.QUAD_RTOL,atol=utils.QUAD_ATOL):
    """
    Integral of a flux profile over an interval: adaptive quadrature of the density split at
    the breakpoints of the generator, plus the delta weights inside the interval. A delta on
    an end of the interval counts with half its weight.

    The generator is affine outside its core interval, where the density vanishes, so the
    quadrature runs over the part of the interval inside the core only.

    ===parameters===
    p: FluxProfile.
    interval: (a,b), default the domain of the generator.
    rtol, atol: tolerances of every quadrature piece.

    ===RETURNS===
    energy: float.
    """
    f=p.generator
    if interval is None: interval=p.domain
    a,b=float(interval[0]),float(interval[1])
    clo,chi=f.core_interval()
    lo,hi=max(a,clo),min(b,chi)
    energy=0.0
    if hi > lo:
        breaks=[lo]+[x for x in f.breakpoints() if lo < x < hi]+[hi]
        energy,_=utils.integrate_pieces(p.density,breaks,rtol=rtol,atol=atol)
    for d in p.deltas:
        if a < d.location < b:
            energy += d.weight
        elif d.location == a or d.location == b:
            energy += 0.5*d.weight
    return energy

def windowed_energy(p,center,half_width):
    """
    total_energy over (center-half_width,center+half_width).
    """
    return total_energy(p,(center-half_width,center+half_width))

def shock_total_energy(s):
    """
    Closed-form total energy of a shock: (12 pi/hbar)*E_n^2*l/(1-12 pi*E_n*l/hbar).
    """
    k=12*np.pi/s.hbar
    return k*s.E_n*s.E_n*s.l/(1-k*s.E_n*s.l)

def qi_satisfied(s):
    """
    True when the shock obeys the uncertainty relation E_n < hbar/(12 pi l).
    """
    if s.l == 0: return True
    return s.E_n < s.hbar/(12*np.pi*s.l)

def sample_profile(p,grid):
    """
    DataFrame with columns x,density on grid.
    """
    grid=np.asarray(grid,dtype=np.float64)
    return pd.DataFrame({"x":grid,"density":p.sample(grid)})
