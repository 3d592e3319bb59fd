#!/usr/bin/env python
# coding: utf-8
############################################
##Mode functions, Klein-Gordon inner products of wavepackets, correlation functions and
##the point-splitting oracle for the energy flux.
############################################
import numpy as np
import pandas as pd
from fluxgo import utils,genfun,flux
from fluxgo.types import SplitParams
from fluxgo.errors import (ConfigError,CoincidentPoints,ExtrapolationDivergence,TruncationFailure)

#tail bound of the truncated spatial window of kg_inner.
TAIL_BOUND=1e-10
#frequency window of a packet, in bandwidths around its center.
OMEGA_HALFWIDTH=12

def _hbar(f,hbar):
    if hbar is None:
        if f is None: return 1.0
        return f.hbar
    return float(hbar)

def plane_mode(omega,xp,hbar=1.0):
    """
    Plane-wave mode sqrt(hbar/(4 pi omega))*exp(-i*omega*xp).
    """
    if not omega > 0: raise ConfigError("omega must be positive, got "+str(omega))
    return np.sqrt(hbar/(4*np.pi*omega))*np.exp(-1j*omega*np.asarray(xp,dtype=np.float64))

def deformed_mode(f,omega,x,hbar=None):
    """
    Deformed mode sqrt(hbar/(4 pi omega))*exp(-i*omega*f(x)).
    """
    return plane_mode(omega,f(x),_hbar(f,hbar))

def mode_function(m,x,hbar=None):
    """
    Value of the mode described by a ModeSpec at x: the plane mode, or the deformed mode of
    its generator.
    """
    if m.kind == 'deformed': return deformed_mode(m.generator,m.omega,x,hbar)
    return plane_mode(m.omega,x,1.0 if hbar is None else float(hbar))

def mirror_mode(omega,t,x,hbar=1.0,generator=None):
    """
    Mode of a field reflected by a perfect mirror at x=0: m(t+x)-m(t-x) for x>0 and zero
    for x<=0, where m is the plane mode or, with a generator, the deformed mode.
    """
    if not x > 0: return 0j
    if generator is None:
        return complex(plane_mode(omega,t+x,hbar)-plane_mode(omega,t-x,hbar))
    return complex(deformed_mode(generator,omega,t+x,hbar)-deformed_mode(generator,omega,t-x,hbar))

########
def two_point(f,x1,x2,hbar=None):
    """
    Two-point function <d phi(x1) d phi(x2)> of the state of f:
    -(hbar/4 pi)*f'(x1)*f'(x2)/(f(x1)-f(x2))^2.
    """
    hbar=_hbar(f,hbar)
    if x1 == x2: raise CoincidentPoints("two_point needs distinct points, got x1=x2=%r."%(x1))
    d=f.increment(x1,x2)
    if d == 0: raise CoincidentPoints("f(x1)=f(x2) at x1=%r, x2=%r."%(x1,x2))
    return -hbar/(4*np.pi)*f.derivative(x1,1)*f.derivative(x2,1)/(d*d)

def _damped(c,u):
    c2=c*c
    u2=u*u
    return (c2-u2)/((c2+u2)**2)

def damped_two_point(f,x1,x2,cutoff,hbar=None):
    """
    Mode integral of the two-point function with the damping exp(-omega*cutoff*sqrt(f'(x1)f'(x2))),
    in closed form: (hbar/4 pi)*Re[1/(cutoff+i*u)^2] with u=(f(x2)-f(x1))/sqrt(f'(x1)f'(x2)).
    Tends to two_point as cutoff->0.
    """
    hbar=_hbar(f,hbar)
    u=f.increment(x1,x2)/np.sqrt(f.derivative(x1,1)*f.derivative(x2,1))
    return hbar/(4*np.pi)*_damped(cutoff,u)

def wick_four_point(f,xs,hbar=None):
    """
    Four-point function of a Gaussian state: the sum over the three pairings of products of
    two-point functions.
    """
    xs=[float(x) for x in xs]
    if len(xs) != 4: raise ConfigError("wick_four_point needs four points.")
    if len(set(xs)) != 4: raise CoincidentPoints("the four points must be distinct: "+str(xs))
    g=lambda i,j: two_point(f,xs[i],xs[j],hbar)
    return g(0,1)*g(2,3)+g(0,2)*g(1,3)+g(0,3)*g(1,2)

def split_scale(f,x):
    """
    Local curvature scale |f''/f'|^-1 clamped to [1e-4,1].
    """
    f1=f.derivative(x,1)
    f2=f.derivative(x,2)
    if f2 == 0: return 1.0
    return float(min(1.0,max(1e-4,abs(f1/f2))))

def _point_split(f,x,sp,hbar):
    x=float(x)
    flux._check_kinks(f,np.array([x]))
    scale=split_scale(f,x) if sp.relative else 1.0
    offsets=np.array(sp.split_offsets[-sp.extrapolation_order:])*scale
    c0=sp.cutoff_delta*scale
    cuts=c0/np.power(2.0,np.arange(sp.cutoff_levels))
    f1x=f.derivative(x,1)
    deltas=[]
    values=[]
    for delta in offsets:
        x2=x+delta
        dact=x2-x
        u=f.increment(x,x2)/np.sqrt(f.derivative(x2,1)*f1x)
        g=[hbar/(4*np.pi)*(_damped(c,u)-_damped(c,dact)) for c in cuts]
        values.append(utils.neville_to_zero(cuts*cuts,g)[-1])
        deltas.append(dact)
    diag=utils.neville_to_zero(deltas,values)
    if len(diag) >= 3:
        last=abs(diag[-1]-diag[-2])
        prev=abs(diag[-2]-diag[-3])
        floor=1e-12*hbar/min(deltas)**2
        if last > prev and last > floor:
            raise ExtrapolationDivergence("point splitting at x=%r: corrections %.3e after %.3e."%(x,last,prev))
    return float(diag[-1]),list(deltas)

def point_split_flux(f,x,sp=None,hbar=None):
    """
    Flux at x from point splitting: the vacuum-subtracted damped two-point function at
    (x+delta,x) is extrapolated first to zero cutoff and then to delta->0.

    ===parameters===
    f: GeneratingFunction, smooth near x.
    x: evaluation point, not a kink.
    sp: SplitParams. Default SplitParams().
    hbar: default the one carried by f.

    ===RETURNS===
    flux: extrapolated flux density, to be compared with flux.flux_density(f,x).
    """
    if sp is None: sp=SplitParams()
    return _point_split(f,x,sp,_hbar(f,hbar))[0]

def oracle_report(f,xs,sp=None,hbar=None):
    """
    Point splitting against the Schwarzian flux on a list of points.

    ===RETURNS===
    df: DataFrame with columns x,analytic_flux,oracle_flux,rel_err,offsets_used.
    """
    if sp is None: sp=SplitParams()
    hbar=_hbar(f,hbar)
    rows=[]
    for x in xs:
        a=flux.flux_density(f,x,hbar)
        o,used=_point_split(f,x,sp,hbar)
        rows.append({"x":float(x),"analytic_flux":a,"oracle_flux":o,
                     "rel_err":abs(o-a)/max(abs(a),1e-12),
                     "offsets_used":';'.join(utils.fmt(d) for d in used)})
    return pd.DataFrame(rows,columns=["x","analytic_flux","oracle_flux","rel_err","offsets_used"])

########
def _omega_rule(p,ymax):
    lo=max(p.center_omega-OMEGA_HALFWIDTH*p.bandwidth,0.0)
    hi=p.center_omega+OMEGA_HALFWIDTH*p.bandwidth
    n=int(np.ceil((hi-lo)*ymax/np.pi))+64
    om,w=utils.panel_nodes([lo,hi],n)
    return om,w

def packet_profile(p,y,ymax=None,hbar=1.0):
    """
    Plane-wave packet P(y)=int g(omega)*sqrt(hbar/(4 pi omega))*exp(-i*omega*y) d omega and
    its derivative dP/dy, complex conjugated for the conjugate sector.
    """
    y=np.asarray(y,dtype=np.float64)
    if ymax is None: ymax=max(1.0,float(np.max(np.abs(y))))
    om,w=_omega_rule(p,ymax)
    amp=w*utils.gaussian_weight(om,p.center_omega,p.bandwidth)*np.sqrt(hbar/(4*np.pi*om))
    phase=np.exp(-1j*np.outer(y,om))
    P=np.dot(phase,amp)
    dP=np.dot(phase,-1j*om*amp)
    if p.conjugate: return np.conj(P),np.conj(dP)
    return P,dP

def _x_nodes(f,ymax,omax,nodes):
    npanel=int(np.ceil(2*ymax*omax/np.pi))+1
    yedges=np.linspace(-ymax,ymax,npanel+1)
    if f is None:
        return utils.panel_nodes(yedges,nodes)
    xedges=[genfun.inverse(f,y) for y in yedges]
    kinks=[k for k in f.kinks if xedges[0] < k < xedges[-1]]
    xedges=np.unique(np.concatenate([xedges,kinks]))
    return utils.panel_nodes(xedges,nodes)

def kg_inner(p1,p2,hbar=1.0,nwidth=12,nodes=16,verbose=False):
    """
    Klein-Gordon inner product (i/hbar)*int[conj(p1)*dp2-conj(dp1)*p2]dx of two wavepackets.

    The packets are centered at y=0 in the argument y=f(x) of the modes; the integral runs
    over |y| <= nwidth times the wider spatial width, in panels uniform in y mapped back
    through f, split at kinks.

    ===parameters===
    p1,p2: Wavepacket of the same kind (and the same generator when deformed).
    hbar: Planck constant.
    nwidth: half-width of the window in spatial widths.
    nodes: Gauss-Legendre nodes per panel.
    verbose: print the window and node counts.

    ===RETURNS===
    value: complex inner product.
    """
    if p1.kind != p2.kind or p1.generator is not p2.generator:
        raise ConfigError("kg_inner needs packets of the same kind and generator.")
    if np.exp(-0.5*nwidth*nwidth) > TAIL_BOUND:
        raise TruncationFailure("a window of %g widths leaves a tail above %g."%(nwidth,TAIL_BOUND))
    f=p1.generator if p1.kind == 'deformed' else None
    ymax=nwidth*max(p1.spatial_width,p2.spatial_width)
    omax=max(p1.center_omega+OMEGA_HALFWIDTH*p1.bandwidth,p2.center_omega+OMEGA_HALFWIDTH*p2.bandwidth)
    try:
        x,w=_x_nodes(f,ymax,omax,nodes)
    except ValueError as e:
        raise TruncationFailure("the window |y|<=%g does not fit the range of the generator: %s"%(ymax,str(e)))
    if f is None:
        y=x
        jac=np.ones(len(x))
    else:
        y=f(x)
        jac=f.derivative(x,1)
    a1,da1=packet_profile(p1,y,ymax,hbar)
    a2,da2=packet_profile(p2,y,ymax,hbar)
    da1=da1*jac
    da2=da2*jac
    if verbose: print('kg_inner: window |y|<=%g, %d nodes'%(ymax,len(x)))
    return complex(1j/hbar*np.sum(w*(np.conj(a1)*da2-np.conj(da1)*a2)))

def packet_overlap(p1,p2):
    """
    Closed-form inner product of two Gaussian packets from the frequency-space overlap
    N1*N2*sqrt(pi/(a1+a2))*exp(-a1*a2*(omega1-omega2)^2/(a1+a2)), a=1/(4 sigma^2). It is the
    same for deformed packets because x'=f(x) maps their integral onto the plane-wave one.
    Packets of opposite sectors are orthogonal and two conjugate packets give minus the
    conjugate value.
    """
    if p1.kind != p2.kind or p1.generator is not p2.generator:
        raise ConfigError("packet_overlap needs packets of the same kind and generator.")
    if p1.conjugate != p2.conjugate: return 0j
    a1=0.25/p1.bandwidth**2
    a2=0.25/p2.bandwidth**2
    n1=np.power(2*np.pi*p1.bandwidth**2,-0.25)
    n2=np.power(2*np.pi*p2.bandwidth**2,-0.25)
    dw=p1.center_omega-p2.center_omega
    v=n1*n2*np.sqrt(np.pi/(a1+a2))*np.exp(-a1*a2*dw*dw/(a1+a2))
    if p1.conjugate: return complex(-v)
    return complex(v)

def gram_matrix(packets,hbar=1.0,nwidth=12,verbose=False):
    """
    Matrix of kg_inner over all pairs of packets.
    """
    n=len(packets)
    g=np.zeros((n,n),dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            g[i,j]=kg_inner(packets[i],packets[j],hbar=hbar,nwidth=nwidth)
        if verbose: print('gram_matrix: row %d of %d'%(i+1,n))
    return g

def one_point(p,x,hbar=1.0):
    """
    Smeared one-point function <d phi> of a packet mode at x. The states of a generating
    function are Gaussian with zero mean, so every mode amplitude has zero expectation and
    the result vanishes identically for every packet and position.
    """
    return 0j
