#!/usr/bin/env python
# coding: utf-8
############################################
##Utility functions used across fluxgo: quadrature, finite differences,
##extrapolation, the mollifier kernel and seeded random generators.
############################################
#import needed packages.
import warnings
from functools import lru_cache
import numpy as np
from numba import jit
from scipy.integrate import quad, IntegrationWarning
from scipy.special import roots_legendre
from fluxgo.errors import QuadratureFailure
#########################################
#default tolerances for every adaptive integral in the package.
QUAD_RTOL=1e-8
QUAD_ATOL=1e-14
QUAD_LIMIT=200

#base steps of the central differences for the 1st, 2nd and 3rd derivative.
FD_BASE_STEPS=(1e-3,3e-3,1e-2)

##
@lru_cache(maxsize=32)
def gauss_legendre(n):
    """
    Gauss-Legendre nodes and weights on [-1,1], cached by order.
    """
    x,w=roots_legendre(int(n))
    x.setflags(write=False)
    w.setflags(write=False)
    return x,w

def panel_nodes(breaks,n=16):
    """
    Composite Gauss-Legendre rule over consecutive breakpoints.

    ===parameters===
    breaks: increasing list of finite breakpoints.
    n: nodes per panel.

    ===RETURNS===
    x: nodes, 1-D array of length n*(len(breaks)-1).
    w: matching weights.
    """
    breaks=np.asarray(breaks,dtype=np.float64)
    z,wz=gauss_legendre(n)
    a=breaks[:-1][:,None]
    b=breaks[1:][:,None]
    half=0.5*(b-a)
    x=(a+b)*0.5+half*z[None,:]
    w=half*wz[None,:]
    return x.ravel(),w.ravel()

def integrate_pieces(func,breaks,rtol=QUAD_RTOL,atol=QUAD_ATOL,limit=QUAD_LIMIT):
    """
    Adaptive Gauss-Kronrod quadrature (QUADPACK through scipy.integrate.quad) over each
    piece between consecutive breakpoints. Breakpoints may be infinite at the ends.

    ===parameters===
    func: scalar function of one real variable.
    breaks: increasing list of breakpoints. Empty pieces are skipped.
    rtol, atol: target relative and absolute error of every piece.
    limit: maximum number of subintervals per piece.

    ===RETURNS===
    total: sum of the piece integrals.
    err: sum of the QUADPACK error estimates.
    """
    total=0.0
    err=0.0
    for a,b in zip(breaks[:-1],breaks[1:]):
        if not b > a: continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore",IntegrationWarning)
            out=quad(func,a,b,epsabs=atol,epsrel=rtol,limit=limit,full_output=1)
        val,e=out[0],out[1]
        if not (np.isfinite(val) and np.isfinite(e)) or e > max(atol,rtol*abs(val)):
            raise QuadratureFailure("quadrature over [%g, %g] stopped at error %.3e for value %.6e"%(a,b,e,val))
        total += val
        err += e

    return total,err

##
def central_diff(func,x,order,steps=FD_BASE_STEPS):
    """
    Fourth-order central finite differences for the first three derivatives of a
    vectorized function. The step of the k-th derivative is steps[k-1]*max(1,|x|).

    ===parameters===
    func: vectorized function.
    x: evaluation point(s).
    order: 1, 2 or 3.

    ===RETURNS===
    d: derivative, same shape as x.
    """
    x=np.asarray(x,dtype=np.float64)
    h=steps[order-1]*np.maximum(1.0,np.abs(x))
    if order == 1:
        d=(func(x-2*h)-8*func(x-h)+8*func(x+h)-func(x+2*h))/(12*h)
    elif order == 2:
        d=(-func(x+2*h)+16*func(x+h)-30*func(x)+16*func(x-h)-func(x-2*h))/(12*h*h)
    elif order == 3:
        d=(-func(x+3*h)+8*func(x+2*h)-13*func(x+h)+13*func(x-h)-8*func(x-2*h)+func(x-3*h))/(8*h*h*h)
    else:
        raise ValueError("central_diff supports orders 1, 2 and 3, not %s"%(str(order)))

    return d

##
def neville_to_zero(t,values):
    """
    Polynomial extrapolation of values(t) to t=0 with Neville's scheme, as in Romberg and
    Ridders tableaux. Points are added in the given order.

    ===parameters===
    t: abscissas (e.g. step sizes or their squares), distinct.
    values: sampled values at t.

    ===RETURNS===
    diag: the diagonal of the tableau. diag[k] uses the first k+1 points; diag[-1] is the
        best estimate.
    """
    t=np.asarray(t,dtype=np.float64)
    p=np.array(values,dtype=np.float64)
    n=len(p)
    diag=[p[0]]
    for j in range(1,n):
        for i in range(n-1,j-1,-1):
            p[i]=(t[i-j]*p[i]-t[i]*p[i-1])/(t[i-j]-t[i])
        diag.append(p[j])

    return np.array(diag)

##
@jit(nopython=True)
def _bump(u,order):
    out=np.zeros(u.shape[0])
    for k in range(u.shape[0]):
        uk=u[k]
        if abs(uk) >= 1.0:
            continue
        q=1.0-uk*uk
        psi=np.exp(-1.0/q)
        if order == 0:
            out[k]=psi
        elif order == 1:
            out[k]=-2.0*uk/(q*q)*psi
        else:
            out[k]=(-2.0/(q*q)-8.0*uk*uk/(q*q*q)+4.0*uk*uk/(q*q*q*q))*psi
    return out

BUMP_NORM=quad(lambda u: np.exp(-1.0/(1.0-u*u)),-1.0,1.0,epsabs=0.0,epsrel=1e-13,limit=200)[0]

def bump(s,width,order=0):
    """
    Normalized smooth bump of half-width `width` and its first two derivatives:
    phi(s)=exp(-1/(1-(s/width)^2))/(N*width) for |s|<width, zero elsewhere.
    """
    s=np.asarray(s,dtype=np.float64)
    u=np.ascontiguousarray(s/width).ravel()
    out=_bump(u,int(order))/(BUMP_NORM*width**(order+1))
    return out.reshape(s.shape)

##
def gaussian_weight(omega,center,bandwidth):
    """
    Square-normalized Gaussian weight over frequency:
    g = (2 pi sigma^2)^(-1/4) exp(-(omega-center)^2/(4 sigma^2)), so that |g|^2 has unit mass.
    """
    omega=np.asarray(omega,dtype=np.float64)
    a=bandwidth
    return np.power(2*np.pi*a*a,-0.25)*np.exp(-np.power(omega-center,2)/(4*a*a))

##
def make_rng(seed):
    """
    PCG64 generator from a SeedSequence, so every report can record its seed.
    """
    return np.random.default_rng(np.random.SeedSequence(int(seed)))

def spawn_rngs(seed,n):
    """
    n statistically independent generators split from one seed.
    """
    children=np.random.SeedSequence(int(seed)).spawn(int(n))
    return [np.random.default_rng(c) for c in children]

##
def fmt(x):
    """
    Print a float with 17 significant digits.
    """
    return '%.17g'%(x)

##
#products E*l within this relative distance of hbar/(12 pi) count as marginal.
ADMISSIBLE_MARGIN=1e-12

def admissible(energy,length,hbar=1.0):
    """
    True when 12 pi*energy*length/hbar stays below one by more than ADMISSIBLE_MARGIN.
    """
    return 12*np.pi*energy*length/hbar < 1-ADMISSIBLE_MARGIN
