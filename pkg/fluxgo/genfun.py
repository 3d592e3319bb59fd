#!/usr/bin/env python
# coding: utf-8
############################################
##Constructors, validation and (de)serialization of generating functions.
############################################
import json
import numpy as np
from scipy.optimize import brentq
from fluxgo import utils,helpers
from fluxgo.types import GeneratingFunction,PiecewiseSegment,MobiusParams,ShockParams,ValidationReport
from fluxgo.errors import (FluxgoError,ConfigError,NonMonotone,PoleInDomain,InadmissibleShock,DomainViolation)

INF=np.inf
#relative tolerance of the C0/C1 matching checks in validate().
MATCH_TOL=1e-12

def _affine(lo,hi,x0,y0,slope):
    return PiecewiseSegment((lo,hi),'affine',(x0,y0,slope))

def make_identity(hbar=1.0):
    """
    The vacuum generator f(x)=x on the whole line.
    """
    return GeneratingFunction([_affine(-INF,INF,0.0,0.0,1.0)],hbar=hbar,name='identity')

def make_moebius(p,domain=(-INF,INF),hbar=1.0):
    """
    Fractional linear generator f(x)=(c+d*x)/(a+b*x) restricted to a pole-free domain.

    ===parameters===
    p: MobiusParams.
    domain: (lo,hi). Only maps with b=0 are admitted on the whole line.
    hbar: Planck constant carried by the function.

    ===RETURNS===
    f: GeneratingFunction with one 'moebius' segment and no kinks.
    """
    lo,hi=float(domain[0]),float(domain[1])
    if not lo < hi: raise ConfigError("empty Moebius domain (%g, %g)."%(lo,hi))
    if not p.det > 0:
        raise NonMonotone("Moebius map with d*a-b*c=%g is not increasing."%(p.det))
    if p.pole is not None and lo <= p.pole <= hi:
        raise PoleInDomain("Moebius pole at x=%g lies in the domain [%g, %g]."%(p.pole,lo,hi))
    seg=PiecewiseSegment((lo,hi),'moebius',(p.a,p.b,p.c,p.d))
    return GeneratingFunction([seg],hbar=hbar,name='moebius',
                              params={"a":p.a,"b":p.b,"c":p.c,"d":p.d,"domain":[lo,hi]})

def compose_moebius(p1,p2):
    """
    Parameters of the composition f1(f2(x)) of two Moebius maps.
    """
    m=np.dot(p1.matrix(),p2.matrix())
    return MobiusParams(a=m[1,1],b=m[1,0],c=m[0,1],d=m[0,0])

def make_shock(s):
    """
    Shock generator: identity for x<x_i, the reciprocal branch
    f=x_i-1/sqrt(eps)+1/(sqrt(eps)-eps*(x-x_i)) on [x_i,x_f) and the C1 affine continuation
    for x>=x_f, with eps=(12 pi E_n/hbar)^2. The flux is -E_n*delta(x-x_i) plus the
    compensating positive delta at x_f.

    ===parameters===
    s: ShockParams.

    ===RETURNS===
    f: GeneratingFunction with kinks (x_i,x_f). E_n=0 or l=0 give the identity without kinks.
    """
    if not s.admissible:
        raise InadmissibleShock("E_n*l=%g reaches hbar/(12 pi)=%g."%(s.E_n*s.l,s.hbar/(12*np.pi)))
    params={"E_n":s.E_n,"x_i":s.x_i,"x_f":s.x_f}
    if s.E_n == 0 or s.l == 0:
        f=make_identity(s.hbar)
        f.name='shock'
        f.params=params
        return f
    q=np.sqrt(s.epsilon)
    mid=PiecewiseSegment((s.x_i,s.x_f),'reciprocal',(s.x_i-1.0/q,q,s.epsilon,s.x_i))
    yf=float(mid.evaluate(s.x_f))
    wf=q-s.epsilon*s.l
    segments=[_affine(-INF,s.x_i,0.0,0.0,1.0),mid,_affine(s.x_f,INF,s.x_f,yf,s.epsilon/(wf*wf))]
    return GeneratingFunction(segments,kinks=(s.x_i,s.x_f),hbar=s.hbar,name='shock',params=params)

def f_eta_rho(E_n,L,hbar=1.0):
    """
    rho=E_n/(hbar/(12 pi)-E_n*L).
    """
    if not utils.admissible(E_n,L,hbar):
        raise InadmissibleShock("E_n*L=%g reaches hbar/(12 pi)=%g."%(E_n*L,hbar/(12*np.pi)))
    return E_n/(hbar/(12*np.pi)-E_n*L)

def make_f_eta(E_n,L,hbar=1.0):
    """
    The minimum-energy generator after a negative shock E_n at x=0 with no flux allowed
    before x=L: slope 1/(rho*L+1)^2 for x<0, the reciprocal branch
    f=L-1/rho+1/(rho-rho^2*(x-L)) on [0,L), and the identity for x>=L.
    """
    if E_n < 0 or L < 0: raise ConfigError("E_n and L must be non-negative.")
    rho=f_eta_rho(E_n,L,hbar)
    params={"E_n":float(E_n),"L":float(L)}
    if E_n == 0 or L == 0:
        f=make_identity(hbar)
        f.name='f_eta'
        f.params=params
        return f
    mid=PiecewiseSegment((0.0,L),'reciprocal',(L-1.0/rho,rho,rho*rho,L))
    y0=float(mid.evaluate(0.0))
    segments=[_affine(-INF,0.0,0.0,y0,1.0/(rho*L+1)**2),mid,_affine(L,INF,L,L,1.0)]
    return GeneratingFunction(segments,kinks=(0.0,L),hbar=hbar,name='f_eta',params=params)

def make_numeric(func,domain=(-INF,INF),kinks=(),hbar=1.0,name='numeric'):
    """
    Wrap a vectorized callable as a generating function whose derivatives come from
    fourth-order central differences. Not serializable.
    """
    seg=PiecewiseSegment(domain,'numeric',func=func)
    return GeneratingFunction([seg],kinks=kinks,hbar=hbar,name=name,core=tuple(seg.interval))

def make_logslope(d2,slope0,L,hbar=1.0):
    """
    Generator with f'=exp(s) on [0,L], s a cubic spline with s''=d2 at uniform knots,
    s'(0)=slope0 and s(L)=0; identity for x>=L and an affine tail for x<0.
    """
    seg=PiecewiseSegment((0.0,L),'logslope',[L,slope0]+list(d2))
    sp=seg.spline
    k0=float(np.exp(sp.s0k[0]))
    segments=[_affine(-INF,0.0,0.0,sp.f0,k0),seg,_affine(L,INF,L,L,1.0)]
    return GeneratingFunction(segments,kinks=(0.0,L),hbar=hbar,name='logslope',
                              params={"L":float(L),"slope0":float(slope0),"d2":[float(v) for v in d2]})

def mollify(f,width=None):
    """
    Convolution of f with the normalized bump of half-width `width`. The result is smooth,
    monotone and kink-free, and equals f's affine continuation farther than `width` from the
    core interval.

    ===parameters===
    f: GeneratingFunction.
    width: half-width of the bump. Default: one hundredth of the core interval of f.

    ===RETURNS===
    g: GeneratingFunction with one 'mollified' segment on the domain of f shrunk by width.
    """
    lo,hi=f.core_interval()
    if width is None:
        if not (np.isfinite(hi-lo) and hi > lo):
            raise ConfigError("no default mollifier width for core interval (%g, %g)."%(lo,hi))
        width=(hi-lo)/100
    width=float(width)
    if not width > 0: raise ConfigError("mollifier width must be positive, got "+str(width))
    dlo,dhi=f.domain
    if not dhi-dlo > 2*width: raise ConfigError("mollifier width %g exceeds the domain."%(width))
    seg=PiecewiseSegment((dlo+width,dhi-width),'mollified',(width,),base=f)
    breaks=[]
    for b in f.breakpoints():
        breaks.extend([b-width,b,b+width])
    breaks=sorted(set(b for b in breaks if dlo+width <= b <= dhi-width))
    return GeneratingFunction([seg],hbar=f.hbar,name='mollified',
                              params={"base":f.name,"width":width},
                              smoothing=f.smoothing+width,core=(lo-width,hi+width),breaks=breaks)

def inverse(f,y,xtol=1e-14):
    """
    x with f(x)=y for a monotone generator, by bracketing and Brent's method.
    """
    lo,hi=f.domain
    a=lo if np.isfinite(lo) else -1.0
    b=hi if np.isfinite(hi) else 1.0
    step=1.0
    while f(a) > y:
        if np.isfinite(lo): raise DomainViolation("y=%g is below the range of %s."%(y,f.name))
        a-=step
        step*=2
        if step > 1e300: raise DomainViolation("y=%g is outside the range of %s."%(y,f.name))
    step=1.0
    while f(b) < y:
        if np.isfinite(hi): raise DomainViolation("y=%g is above the range of %s."%(y,f.name))
        b+=step
        step*=2
        if step > 1e300: raise DomainViolation("y=%g is outside the range of %s."%(y,f.name))
    if f(a) == y: return a
    if f(b) == y: return b
    return brentq(lambda x: f(x)-y,a,b,xtol=xtol,rtol=4*np.finfo(float).eps)

def validate(f,npts=2001):
    """
    Check monotonicity on a dense sample and at all segment ends, C0 and C1 matching at
    segment boundaries, poles of Moebius pieces and, for whole-line generators, that both
    tails diverge.

    ===RETURNS===
    report: ValidationReport. Failures are recorded, never raised.
    """
    report=ValidationReport(f.name)
    dlo,dhi=f.domain
    clo,chi=f.core_interval()
    span=max(1.0,(chi-clo) if np.isfinite(chi-clo) else 1.0)
    a=max(dlo,(clo if np.isfinite(clo) else -10.0)-span)
    b=min(dhi,(chi if np.isfinite(chi) else 10.0)+span)
    grid=np.linspace(a,b,npts)
    ends=[e for s in f.segments for e in s.interval if np.isfinite(e)]
    grid=np.unique(np.concatenate([grid,ends]))
    grid=grid[(grid >= dlo)&(grid <= dhi)]
    fp=np.concatenate([f.derivative(grid,1),f.derivative(grid,1,side='left')])
    fmin=float(np.min(fp))
    report.add('monotone',max(0.0,-fmin),0.0,passed=fmin > 0,
               message='min f\'=%.6g'%(fmin))

    c0=0.0
    c1=0.0
    for left,right in zip(f.segments[:-1],f.segments[1:]):
        x=right.interval[0]
        fl,fr=float(left.evaluate(x)),float(right.evaluate(x))
        dl,dr=float(left.evaluate(x,1)),float(right.evaluate(x,1))
        c0=max(c0,abs(fl-fr)/max(1.0,abs(fr)))
        c1=max(c1,abs(dl-dr)/max(1.0,abs(dr)))
    report.add('continuity',c0,MATCH_TOL)
    report.add('c1',c1,MATCH_TOL)

    bounds=set(s.interval[0] for s in f.segments[1:])
    stray=[k for k in f.kinks if k not in bounds]
    report.add('kinks',len(stray),0,message='kinks off segment boundaries: '+str(stray))

    worst=0.0
    for s in f.segments:
        if s.form == 'moebius' and s.coeffs[1] != 0:
            pole=-s.coeffs[0]/s.coeffs[1]
            if s.interval[0] <= pole <= s.interval[1]: worst=max(worst,1.0)
    report.add('poles',worst,0.0)

    if np.isinf(dlo) and np.isinf(dhi):
        slopes=list(f.asymptotic_slopes)
        for i,x in enumerate([a-1e3*span,b+1e3*span]):
            if slopes[i] is None: slopes[i]=float(f.derivative(x,1))
        smin=min(slopes)
        report.add('asymptotic',max(0.0,-smin),0.0,passed=smin > 0,
                   message='tail slopes '+str(slopes))
    return report

########
def to_dict(f):
    return f.to_dict()

def save(f,file):
    f.save(file)

def _segment_from_dict(d):
    form=d["form"]
    if form not in helpers.segment_forms():
        raise ConfigError("unknown segment form: "+str(form))
    if form == 'numeric':
        raise ConfigError("numeric segments cannot be read from a file.")
    if form == 'mollified':
        raise ConfigError("a mollified segment must be the only segment of its document.")
    interval=d["interval"]
    if len(interval) != 2: raise ConfigError("segment interval needs two ends.")
    return PiecewiseSegment(interval,form,d.get("coeffs",[]))

def _from_constructor(d,hbar):
    name=d["constructor"]
    if name not in helpers.constructors():
        raise ConfigError("unknown constructor: "+str(name))
    if name == 'identity':
        return make_identity(hbar)
    elif name == 'moebius':
        p=MobiusParams(d["a"],d["b"],d["c"],d["d"])
        return make_moebius(p,tuple(d.get("domain",[-INF,INF])),hbar)
    elif name == 'shock':
        return make_shock(ShockParams(d["E_n"],d["x_i"],d["x_f"],hbar))
    elif name == 'f_eta':
        return make_f_eta(float(d["E_n"]),float(d["L"]),hbar)
    elif name == 'logslope':
        return make_logslope(d["d2"],float(d["slope0"]),float(d["L"]),hbar)

def from_dict(d):
    """
    Rebuild a generating function from its JSON document. Besides the segment form written by
    GeneratingFunction.to_dict(), a document may name a constructor, e.g.
    {"constructor":"shock","E_n":0.01,"x_i":0,"x_f":1}, optionally with "mollify": width.
    """
    if not isinstance(d,dict): raise ConfigError("a generating function document must be a JSON object.")
    try:
        hbar=float(d.get("hbar",1.0))
        if not hbar > 0: raise ConfigError("hbar must be positive, got "+str(hbar))
        if "constructor" in d:
            f=_from_constructor(d,hbar)
            if d.get("mollify") is not None:
                f=mollify(f,float(d["mollify"]))
            return f
        segs=d["segments"]
        if len(segs) == 1 and segs[0]["form"] == 'mollified':
            base=from_dict(segs[0]["base"])
            return mollify(base,float(segs[0]["coeffs"][0]))
        segments=[_segment_from_dict(s) for s in segs]
        for left,right in zip(segments[:-1],segments[1:]):
            if left.interval[1] != right.interval[0]:
                raise ConfigError("segments must be contiguous: %g != %g"%(left.interval[1],right.interval[0]))
        return GeneratingFunction(segments,kinks=d.get("kinks",[]),hbar=hbar,name=d.get("name",'custom'))
    except FluxgoError:
        raise
    except (KeyError,TypeError,IndexError,ValueError) as e:
        raise ConfigError("malformed generating function document: "+repr(e))

def loads(text):
    try:
        d=json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("malformed JSON: "+str(e))
    return from_dict(d)

def load(file):
    """
    Read a generating function from a JSON file.
    """
    try:
        with open(file,'r') as fp:
            text=fp.read()
    except OSError as e:
        raise ConfigError("cannot read %s: %s"%(file,str(e)))
    return loads(text)
