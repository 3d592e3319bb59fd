#define key classes
import json
import numpy as np
import pandas as pd
from fluxgo import utils
from fluxgo.errors import ConfigError,DomainViolation
######
#number of Gauss-Legendre nodes per piece of the mollifier convolution.
MOLLIFY_NODES=96
#nodes per knot interval when integrating exp(s) for the log-slope family.
LOGSLOPE_NODES=8

class MobiusParams(object):
    """
    Coefficients of the fractional linear map f(x)=(c+d*x)/(a+b*x).

    Attributes
    -----------
    a,b,c,d: real coefficients. The map is increasing when det=d*a-b*c>0.
    """
    def __init__(self,a=1.0,b=0.0,c=0.0,d=1.0):
        self.a=float(a)
        self.b=float(b)
        self.c=float(c)
        self.d=float(d)

    @property
    def det(self):
        return self.d*self.a-self.b*self.c

    @property
    def pole(self):
        """Location -a/b of the pole, None for affine maps."""
        if self.b == 0: return None
        return -self.a/self.b

    def matrix(self):
        """
        Matrix [[d,c],[b,a]] acting on (x,1); composition of maps is the matrix product.
        """
        return np.array([[self.d,self.c],[self.b,self.a]])

    def __str__(self):
        print("a     :   "+str(self.a))
        print("b     :   "+str(self.b))
        print("c     :   "+str(self.c))
        print("d     :   "+str(self.d))
        print("det   :   "+str(self.det))
        print("")
        return "<MobiusParams object>"

class ShockParams(object):
    """
    A negative shock of energy E_n at x_i followed by its compensating positive shock at x_f.

    Attributes
    -----------
    E_n: magnitude of the negative energy (hbar per unit length, c=1).
    x_i, x_f: locations of the two shocks, x_i <= x_f.
    hbar: Planck constant in the units of the problem.
    l: delay x_f-x_i.
    epsilon: (12 pi E_n/hbar)^2.
    admissible: True when E_n*l < hbar/(12 pi).
    """
    def __init__(self,E_n,x_i,x_f,hbar=1.0):
        self.E_n=float(E_n)
        self.x_i=float(x_i)
        self.x_f=float(x_f)
        self.hbar=float(hbar)
        if not np.all(np.isfinite([self.E_n,self.x_i,self.x_f,self.hbar])):
            raise ConfigError("shock parameters must be finite.")
        if self.E_n < 0: raise ConfigError("E_n must be non-negative, got "+str(E_n))
        if self.hbar <= 0: raise ConfigError("hbar must be positive, got "+str(hbar))
        if self.x_i > self.x_f: raise ConfigError("x_i must not exceed x_f: %g > %g"%(self.x_i,self.x_f))

    @property
    def l(self):
        return self.x_f-self.x_i

    @property
    def epsilon(self):
        return (12*np.pi*self.E_n/self.hbar)**2

    @property
    def admissible(self):
        return utils.admissible(self.E_n,self.l,self.hbar)

    def __str__(self):
        print("E_n         :   "+str(self.E_n))
        print("x_i         :   "+str(self.x_i))
        print("x_f         :   "+str(self.x_f))
        print("l           :   "+str(self.l))
        print("epsilon     :   "+str(self.epsilon))
        print("admissible  :   "+str(self.admissible))
        print("")
        return "<ShockParams object>"

class LogSlopeSpline(object):
    """
    Log-slope s(x)=log f'(x) on [0,L] as a cubic spline whose second derivative is
    piecewise linear through values d2 at uniform knots. s'(0)=slope0 and s(L)=0, so a
    generator built on it joins the identity at x=L with matching slope.
    """
    def __init__(self,L,slope0,d2):
        d2=np.asarray(d2,dtype=np.float64)
        if d2.ndim != 1 or len(d2) < 2:
            raise ConfigError("the log-slope spline needs at least two knot values.")
        if not L > 0: raise ConfigError("the log-slope spline needs L > 0, got "+str(L))
        self.L=float(L)
        self.slope0=float(slope0)
        self.d2=d2
        self.knots=np.linspace(0.0,self.L,len(d2))
        self.h=np.diff(self.knots)
        self.dd=np.diff(d2)
        h,dd=self.h,self.dd
        s1=self.slope0+np.concatenate([[0.0],np.cumsum(d2[:-1]*h+0.5*dd*h)])
        s0=np.concatenate([[0.0],np.cumsum(s1[:-1]*h+0.5*d2[:-1]*h*h+dd*h*h/6)])
        self.s1k=s1
        self.s0k=s0-s0[-1]
        #integral of exp(s) over each knot interval.
        z,wz=utils.gauss_legendre(LOGSLOPE_NODES)
        t=0.5*h[:,None]*(z[None,:]+1)
        j=np.repeat(np.arange(len(h))[:,None],len(z),axis=1)
        e=np.exp(self._local(j,t,0))
        self.cum=np.concatenate([[0.0],np.cumsum(np.sum(0.5*h[:,None]*wz[None,:]*e,axis=1))])
        self.f0=self.L-self.cum[-1]

    def _local(self,j,t,nu):
        d2,dd,h=self.d2[j],self.dd[j],self.h[j]
        if nu == 0:
            return self.s0k[j]+self.s1k[j]*t+0.5*d2*t*t+dd*t*t*t/(6*h)
        elif nu == 1:
            return self.s1k[j]+d2*t+0.5*dd*t*t/h
        else:
            return d2+dd*t/h

    def _index(self,x):
        j=np.searchsorted(self.knots,x,side='right')-1
        return np.clip(j,0,len(self.h)-1)

    def s(self,x,nu=0):
        """s and its first two derivatives, evaluated with the cubic of the containing interval."""
        x=np.asarray(x,dtype=np.float64)
        j=self._index(x)
        return self._local(j,x-self.knots[j],nu)

    def value(self,x):
        """f(x)=f(0)+int_0^x exp(s)."""
        x=np.asarray(x,dtype=np.float64)
        j=self._index(x)
        t=x-self.knots[j]
        z,wz=utils.gauss_legendre(LOGSLOPE_NODES)
        tt=0.5*t[...,None]*(z+1)
        jj=np.broadcast_to(j[...,None],tt.shape)
        part=np.sum(0.5*t[...,None]*wz*np.exp(self._local(jj,tt,0)),axis=-1)
        return self.f0+self.cum[j]+part

class PiecewiseSegment(object):
    """
    One closed-form piece of a generating function on the half-open interval [lo,hi).

    Forms and coefficients
    -----------
    affine: (x0,y0,slope), f=y0+slope*(x-x0).
    moebius: (a,b,c,d), f=(c+d*x)/(a+b*x).
    reciprocal: (p,q,r,x0), f=p+1/(q-r*(x-x0)). This is the middle branch of the shock profiles.
    logslope: (L,slope0,d2...), f'=exp(s) with s a LogSlopeSpline.
    mollified: (width,), convolution of `base` with the normalized bump.
    numeric: (), user callable `func` differentiated with central differences.
    """
    def __init__(self,interval,form,coeffs=(),func=None,base=None):
        self.interval=(float(interval[0]),float(interval[1]))
        self.form=form
        self.coeffs=tuple(float(c) for c in coeffs)
        self.func=func
        self.base=base
        self.spline=None
        if form == 'logslope':
            self.spline=LogSlopeSpline(self.coeffs[0],self.coeffs[1],self.coeffs[2:])

    @property
    def closed_form(self):
        return self.form in ['affine','moebius','reciprocal']

    @property
    def slope(self):
        """Constant slope of an affine piece (a Moebius piece with b=0 included), else None."""
        if self.form == 'affine': return self.coeffs[2]
        if self.form == 'moebius' and self.coeffs[1] == 0:
            return self.coeffs[3]/self.coeffs[0]
        return None

    def evaluate(self,x,nu=0):
        """
        f^(nu)(x) for nu in 0..3 using the formula of this segment (also outside the interval,
        which gives one-sided limits at the ends).
        """
        x=np.asarray(x,dtype=np.float64)
        if self.form == 'affine':
            x0,y0,k=self.coeffs
            if nu == 0: return y0+k*(x-x0)
            elif nu == 1: return np.full(x.shape,k)
            else: return np.zeros(x.shape)
        elif self.form == 'moebius':
            a,b,c,d=self.coeffs
            u=a+b*x
            det=d*a-b*c
            if nu == 0: return (c+d*x)/u
            elif nu == 1: return det/(u*u)
            elif nu == 2: return -2*b*det/(u*u*u)
            else: return 6*b*b*det/(u*u*u*u)
        elif self.form == 'reciprocal':
            p,q,r,x0=self.coeffs
            w=q-r*(x-x0)
            if nu == 0: return p+1.0/w
            elif nu == 1: return r/(w*w)
            elif nu == 2: return 2*r*r/(w*w*w)
            else: return 6*r*r*r/(w*w*w*w)
        elif self.form == 'logslope':
            sp=self.spline
            if nu == 0: return sp.value(x)
            es=np.exp(sp.s(x,0))
            if nu == 1: return es
            s1=sp.s(x,1)
            if nu == 2: return s1*es
            return (sp.s(x,2)+s1*s1)*es
        elif self.form == 'mollified':
            return _mollified(self.base,self.coeffs[0],x,nu)
        elif self.form == 'numeric':
            if nu == 0: return np.asarray(self.func(x),dtype=np.float64)
            return utils.central_diff(self.func,x,nu)
        else:
            raise ConfigError("unknown segment form: "+str(self.form))

    def increment(self,x1,x2):
        """
        f(x2)-f(x1) for two points of this segment, free of cancellation for closed forms.
        """
        if self.form == 'affine':
            return self.coeffs[2]*(x2-x1)
        elif self.form == 'moebius':
            a,b,c,d=self.coeffs
            return (d*a-b*c)*(x2-x1)/((a+b*x1)*(a+b*x2))
        elif self.form == 'reciprocal':
            p,q,r,x0=self.coeffs
            return r*(x2-x1)/((q-r*(x1-x0))*(q-r*(x2-x0)))
        return self.evaluate(x2)-self.evaluate(x1)

    def to_dict(self):
        if self.form == 'numeric':
            raise ConfigError("numeric segments hold a Python callable and cannot be serialized.")
        d={"interval":[self.interval[0],self.interval[1]],"form":self.form,"coeffs":list(self.coeffs)}
        if self.form == 'mollified':
            d["base"]=self.base.to_dict()
        return d

    def __str__(self):
        print("interval   :   "+str(self.interval))
        print("form       :   "+str(self.form))
        print("coeffs     :   "+str(self.coeffs))
        print("")
        return "<PiecewiseSegment object>"

def _mollified(base,width,x,nu):
    out=np.empty(x.shape)
    bps=np.asarray(base.breakpoints(),dtype=np.float64)
    for k,xk in np.ndenumerate(x):
        cuts=xk-bps[np.abs(xk-bps) < width]
        edges=np.unique(np.concatenate([[-width],cuts,[width]]))
        s,ws=utils.panel_nodes(edges,MOLLIFY_NODES)
        if nu <= 1:
            phi=utils.bump(s,width,0)*ws
            out[k]=np.sum(base.derivative(xk-s,nu)*phi)/np.sum(phi)
        else:
            dphi=utils.bump(s,width,nu-1)*ws
            g=base.derivative(xk-s,1)-base.derivative(np.array([xk]),1)[0]
            out[k]=np.sum(g*dphi)
    return out

class GeneratingFunction(object):
    """
    A monotone C1 map f of one light-cone coordinate, the implicit representation of a
    squeezed state through its deformed modes exp(-i*omega*f(x)).

    ======= Attributes ======
    segments: ordered list of PiecewiseSegment covering the domain without gaps.
    kinks: sorted tuple of locations where f is C1 but not C2.
    domain: (lo,hi), possibly infinite.
    asymptotic_slopes: (left,right) slopes of affine tails, None where the tail is not affine.
    hbar: Planck constant carried with the function (used by flux and modes when hbar is not given).
    name: constructor label, e.g. 'shock' or 'f_eta'.
    params: constructor arguments, kept for reports.
    smoothing: mollifier half-width, 0 for unsmoothed functions.
    """
    def __init__(self,segments,kinks=(),hbar=1.0,name='custom',params=None,smoothing=0.0,
                 core=None,breaks=None):
        if len(segments) == 0: raise ConfigError("a generating function needs at least one segment.")
        self.segments=list(segments)
        self.kinks=tuple(sorted(float(k) for k in kinks))
        self.domain=(self.segments[0].interval[0],self.segments[-1].interval[1])
        self.hbar=float(hbar)
        self.name=name
        if params is None: params=dict()
        self.params=params
        self.smoothing=float(smoothing)
        self._bounds=np.array([s.interval[0] for s in self.segments[1:]],dtype=np.float64)
        self._core=core
        self._breaks=breaks
        self.asymptotic_slopes=(self._tail_slope(self.segments[0],-1),self._tail_slope(self.segments[-1],1))

    @staticmethod
    def _tail_slope(seg,side):
        end=seg.interval[0] if side < 0 else seg.interval[1]
        if np.isinf(end): return seg.slope
        return None

    def _check_domain(self,x):
        lo,hi=self.domain
        bad=~((x >= lo)&(x <= hi))
        if np.any(bad):
            raise DomainViolation("x=%s lies outside the domain [%g, %g] of %s."%(str(x[bad][0]),lo,hi,self.name))

    def segment_index(self,x,side='right'):
        """
        Index of the segment holding x. side='left' picks the segment ending at x when x is a
        boundary, which gives left limits.
        """
        return np.searchsorted(self._bounds,x,side=side)

    def derivative(self,x,nu=0,side='right'):
        """
        f^(nu)(x), nu in 0..3. At a segment boundary the right segment is used unless side='left'.
        """
        scalar=np.ndim(x) == 0
        x=np.atleast_1d(np.asarray(x,dtype=np.float64))
        self._check_domain(x)
        idx=self.segment_index(x,side)
        out=np.empty(x.shape)
        for i in np.unique(idx):
            m=idx == i
            out[m]=self.segments[i].evaluate(x[m],nu)
        if scalar: return out[0]
        return out

    def __call__(self,x):
        return self.derivative(x,0)

    def derivs(self,x,side='right'):
        """(f,f',f'',f''') at x."""
        return tuple(self.derivative(x,nu,side) for nu in range(4))

    def derivs_left(self,x):
        return self.derivs(x,side='left')

    def derivs_right(self,x):
        return self.derivs(x,side='right')

    def increment(self,x1,x2):
        """f(x2)-f(x1), computed within one segment when both points share it."""
        x1=float(x1)
        x2=float(x2)
        self._check_domain(np.array([x1,x2]))
        i1,i2=self.segment_index([x1,x2])
        if i1 == i2:
            return float(self.segments[i1].increment(x1,x2))
        return float(self.derivative(x2)-self.derivative(x1))

    def core_interval(self):
        """
        The smallest interval outside of which f is affine (infinite where a tail is not affine).
        """
        if self._core is not None: return self._core
        inner=[s for s in self.segments if s.slope is None]
        if len(inner) == 0:
            if len(self.kinks) > 0: return (self.kinks[0],self.kinks[-1])
            return (0.0,0.0)
        return (inner[0].interval[0],inner[-1].interval[1])

    def breakpoints(self):
        """Finite kinks, segment boundaries and spline knots, where quadrature must split."""
        if self._breaks is not None: return list(self._breaks)
        b=set(self.kinks)
        for s in self.segments:
            for e in s.interval:
                if np.isfinite(e): b.add(e)
            if s.spline is not None: b.update(float(k) for k in s.spline.knots)
        return sorted(b)

    def to_dict(self):
        return {"name":self.name,
                "segments":[s.to_dict() for s in self.segments],
                "kinks":list(self.kinks),
                "hbar":self.hbar,
                "smoothing":self.smoothing}

    def to_json(self):
        return json.dumps(self.to_dict(),indent=2)

    def save(self,file):
        """
        Write the JSON serialization to file. Floats use the shortest round-trip repr.
        """
        with open(file,'w') as fp:
            fp.write(self.to_json())

    def __str__(self):
        print("name               :   "+str(self.name))
        print("domain             :   "+str(self.domain))
        print("segments           :   "+str([s.form for s in self.segments]))
        print("kinks              :   "+str(self.kinks))
        print("asymptotic_slopes  :   "+str(self.asymptotic_slopes))
        print("hbar               :   "+str(self.hbar))
        print("smoothing          :   "+str(self.smoothing))
        print("")
        return "<GeneratingFunction object>"

class ValidationReport(object):
    """
    Result of genfun.validate(). Each check is a dict with name, worst, tolerance and passed.
    """
    def __init__(self,name,checks=None):
        self.name=name
        if checks is None: checks=[]
        self.checks=checks

    def add(self,name,worst,tolerance,passed=None,message=''):
        if passed is None: passed=bool(worst <= tolerance)
        self.checks.append({"name":name,"worst":float(worst),"tolerance":float(tolerance),
                            "passed":bool(passed),"message":message})

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["passed"]]

    def to_dict(self):
        return {"name":self.name,"passed":self.passed,"checks":self.checks}

    def __str__(self):
        for c in self.checks:
            print("%-20s:   worst=%.3e  tol=%.1e  %s"%(c["name"],c["worst"],c["tolerance"],
                                                    "ok" if c["passed"] else "FAILED "+c["message"]))
        print("")
        return "<ValidationReport object>"

class DeltaTerm(object):
    """A delta-function term weight*delta(x-location) of a flux profile."""
    def __init__(self,location,weight):
        self.location=float(location)
        self.weight=float(weight)

    def __iter__(self):
        return iter((self.location,self.weight))

    def __repr__(self):
        return "DeltaTerm(%r, %r)"%(self.location,self.weight)

class FluxProfile(object):
    """
    Energy flux of a state: a smooth density plus delta terms at the kinks.

    ======= Attributes ======
    generator: the GeneratingFunction the profile comes from.
    density: callable x -> flux density; at a kink it returns the mean of the one-sided values.
    deltas: list of DeltaTerm.
    domain: domain of the generator.
    hbar: Planck constant used.
    """
    def __init__(self,generator,density,deltas,hbar):
        self.generator=generator
        self.density=density
        self.deltas=list(deltas)
        self.domain=generator.domain
        self.hbar=float(hbar)

    def sample(self,grid):
        grid=np.asarray(grid,dtype=np.float64)
        return np.array([self.density(x) for x in grid])

    def to_csv(self,file,grid):
        """
        Write x,density on grid to file and the delta terms to the sidecar <stem>.deltas.json.
        """
        grid=np.asarray(grid,dtype=np.float64)
        df=pd.DataFrame({"x":grid,"density":self.sample(grid)})
        df.to_csv(file,index=False,float_format='%.17g')
        side=deltas_file(file)
        with open(side,'w') as fp:
            fp.write(json.dumps({"deltas":[[d.location,d.weight] for d in self.deltas]}))
        return side

    def __str__(self):
        print("generator   :   "+str(self.generator.name))
        print("domain      :   "+str(self.domain))
        print("deltas      :   "+str(self.deltas))
        print("hbar        :   "+str(self.hbar))
        print("")
        return "<FluxProfile object>"

def deltas_file(file):
    """Sidecar path for the delta terms of a flux CSV file."""
    file=str(file)
    if file.endswith('.csv'): file=file[:-4]
    return file+'.deltas.json'

class ModeSpec(object):
    """
    A single mode: plane wave exp(-i*omega*x) or the deformed mode exp(-i*omega*f(x)).
    """
    def __init__(self,omega,kind='plane',generator=None):
        if not omega > 0: raise ConfigError("omega must be positive, got "+str(omega))
        if kind not in ['plane','deformed']: raise ConfigError("unknown mode kind: "+str(kind))
        if kind == 'deformed' and generator is None:
            raise ConfigError("deformed modes need a generator.")
        self.omega=float(omega)
        self.kind=kind
        self.generator=generator

class Wavepacket(object):
    """
    Gaussian superposition of modes, the normalizable stand-in for a delta-normalized mode.

    ======= Attributes ======
    center_omega: center frequency omega0.
    bandwidth: sigma of the weight g=(2 pi sigma^2)^(-1/4) exp(-(omega-omega0)^2/(4 sigma^2)).
    kind: 'plane' or 'deformed'.
    generator: GeneratingFunction for deformed packets.
    conjugate: True for the complex-conjugate (negative-norm) sector.
    """
    def __init__(self,center_omega,bandwidth,kind='plane',generator=None,conjugate=False):
        if not bandwidth > 0: raise ConfigError("bandwidth must be positive, got "+str(bandwidth))
        if not center_omega >= 8*bandwidth:
            raise ConfigError("center_omega must be at least 8 bandwidths (%g < %g)."%(center_omega,8*bandwidth))
        if kind not in ['plane','deformed']: raise ConfigError("unknown packet kind: "+str(kind))
        if kind == 'deformed' and generator is None:
            raise ConfigError("deformed packets need a generator.")
        self.center_omega=float(center_omega)
        self.bandwidth=float(bandwidth)
        self.kind=kind
        self.generator=generator
        self.conjugate=bool(conjugate)

    @property
    def spatial_width(self):
        """Standard deviation of |P(y)|^2 in the argument y of the plane-wave packet."""
        return 0.5/self.bandwidth

    @property
    def sector(self):
        return ('conjugate-' if self.conjugate else '')+self.kind

    def __str__(self):
        print("center_omega   :   "+str(self.center_omega))
        print("bandwidth      :   "+str(self.bandwidth))
        print("sector         :   "+str(self.sector))
        print("")
        return "<Wavepacket object>"

class SplitParams(object):
    """
    Point-splitting settings. With relative=True the offsets and the cutoff are in units of the
    local curvature scale |f''/f'|^-1 clamped to [1e-4,1].
    """
    def __init__(self,split_offsets=(1e-2,5e-3,2.5e-3),cutoff_delta=None,extrapolation_order=3,
                 cutoff_levels=5,relative=True):
        offsets=np.asarray(split_offsets,dtype=np.float64)
        if cutoff_delta is None: cutoff_delta=offsets.min()/10
        if len(offsets) < 2 or np.any(np.diff(offsets) >= 0):
            raise ConfigError("split offsets must be strictly decreasing, got "+str(list(offsets)))
        if not cutoff_delta > 0 or np.any(offsets <= cutoff_delta):
            raise ConfigError("all split offsets must exceed the cutoff %g."%(cutoff_delta))
        if extrapolation_order < 1 or extrapolation_order > len(offsets):
            raise ConfigError("extrapolation_order must be between 1 and the number of offsets.")
        self.split_offsets=tuple(offsets)
        self.cutoff_delta=float(cutoff_delta)
        self.extrapolation_order=int(extrapolation_order)
        self.cutoff_levels=int(cutoff_levels)
        self.relative=bool(relative)

class GedankenScenario(object):
    """
    The switching thought experiment: a negative shock reflected at the mirror at t=x_i, the
    switch open on [0,t_s], the compensating positive shock passing at t=x_f.
    """
    def __init__(self,t_s,x_i,x_f,E_n,polarizations=2,hbar=1.0):
        self.t_s=float(t_s)
        self.x_i=float(x_i)
        self.x_f=float(x_f)
        self.E_n=float(E_n)
        self.polarizations=int(polarizations)
        self.hbar=float(hbar)

    def to_dict(self):
        return {"t_s":self.t_s,"x_i":self.x_i,"x_f":self.x_f,"E_n":self.E_n,
                "polarizations":self.polarizations,"hbar":self.hbar}

class MinimizerProblem(object):
    """
    Minimum positive energy after a negative shock E_n at x=0 when no other flux may appear
    before x=L. family_dim is the number of parameters of the numeric search.
    """
    def __init__(self,E_n,L,hbar=1.0,family_dim=8):
        self.E_n=float(E_n)
        self.L=float(L)
        self.hbar=float(hbar)
        self.family_dim=int(family_dim)
        if self.E_n < 0 or self.L < 0 or self.hbar <= 0:
            raise ConfigError("E_n and L must be non-negative and hbar positive.")

    @property
    def admissible(self):
        return utils.admissible(self.E_n,self.L,self.hbar)

    def to_dict(self):
        return {"E_n":self.E_n,"L":self.L,"hbar":self.hbar,"family_dim":self.family_dim}

class OracleResult(object):
    """
    Outcome of the direct-search minimization. theta=[s'(0), s'' at the knots].
    """
    def __init__(self,problem,energy,theta,closed_form,objective=0.0,eta_residual=0.0,
                 flux_residual=0.0,improvement_steps=0,nfev=0,seed=0,nstart=1):
        self.problem=problem
        self.energy=float(energy)
        self.theta=np.asarray(theta,dtype=np.float64)
        self.closed_form=float(closed_form)
        self.objective=float(objective)
        self.eta_residual=float(eta_residual)
        self.flux_residual=float(flux_residual)
        self.improvement_steps=int(improvement_steps)
        self.nfev=int(nfev)
        self.seed=int(seed)
        self.nstart=int(nstart)

    @property
    def excess(self):
        """Relative excess of the oracle over the closed form."""
        if self.closed_form == 0: return self.energy
        return self.energy/self.closed_form-1

    def to_dict(self):
        return {"problem":self.problem.to_dict(),"closed_form":self.closed_form,
                "oracle":self.energy,"excess":self.excess,"objective":self.objective,
                "eta_residual":self.eta_residual,"flux_residual":self.flux_residual,
                "improvement_steps":self.improvement_steps,"nfev":self.nfev,
                "theta":[float(t) for t in self.theta],"seed":self.seed,"nstart":self.nstart}

    def __str__(self):
        print("closed_form        :   "+str(self.closed_form))
        print("oracle             :   "+str(self.energy))
        print("excess             :   "+str(self.excess))
        print("eta_residual       :   "+str(self.eta_residual))
        print("flux_residual      :   "+str(self.flux_residual))
        print("improvement_steps  :   "+str(self.improvement_steps))
        print("")
        return "<OracleResult object>"

class ChainReport(object):
    """
    Steps of the switching-bound derivation with the final bound and its witness scenario.
    """
    def __init__(self,t_s,hbar,polarizations,bound_per_pol,bound_total,witness,steps):
        self.t_s=t_s
        self.hbar=hbar
        self.polarizations=polarizations
        self.bound_per_pol=bound_per_pol
        self.bound_total=bound_total
        self.witness=witness
        self.steps=steps

    def step(self,name):
        for s in self.steps:
            if s["name"] == name: return s
        raise KeyError(name)

    def to_dict(self):
        return {"t_s":self.t_s,"hbar":self.hbar,"polarizations":self.polarizations,
                "bound_per_pol":self.bound_per_pol,"bound_total":self.bound_total,
                "witness":self.witness,"steps":self.steps}

class EtaReport(object):
    """
    eta(x)=1/f'(x)-1 sampled on a grid ending at L. Calling the report evaluates eta.
    """
    def __init__(self,generator,L,grid,eta,eta_L):
        self.generator=generator
        self.L=float(L)
        self.grid=grid
        self.eta=eta
        self.eta_L=float(eta_L)

    def __call__(self,x):
        x=np.asarray(x,dtype=np.float64)
        inside=x < self.L
        out=np.zeros(x.shape)
        if np.any(inside):
            out[inside]=1.0/self.generator.derivative(x[inside],1,side='left')-1.0
        return out

class ScenarioTimeline(object):
    """
    Time-ordered events of a switching scenario and the right-moving output profile.
    """
    def __init__(self,scenario,events,profile):
        self.scenario=scenario
        self.events=events
        self.profile=profile

    def names(self):
        return [e["name"] for e in self.events]

    def to_dict(self):
        return {"scenario":self.scenario.to_dict(),"events":self.events,"profile":self.profile}

class CheckReport(object):
    """
    Result of a verification suite. Each check has name, observed, tolerance and passed.
    """
    def __init__(self,suite,seed):
        self.suite=suite
        self.seed=int(seed)
        self.checks=[]

    def add(self,name,observed,tolerance,passed=None):
        observed=float(observed)
        if passed is None: passed=bool(observed <= tolerance)
        self.checks.append({"name":name,"observed":observed,"tolerance":float(tolerance),
                            "passed":bool(passed)})

    @property
    def passed(self):
        return len(self.checks) > 0 and all(c["passed"] for c in self.checks)

    def to_dict(self):
        return {"suite":self.suite,"seed":self.seed,"passed":self.passed,"checks":self.checks}

class SweepConfig(object):
    """
    A parameter sweep: `command` run once per value of `parameter`, other inputs from `fixed`.
    """
    def __init__(self,parameter,values,command,output_path=None,seed=0,fixed=None):
        self.parameter=parameter
        self.values=[float(v) for v in values]
        self.command=command
        self.output_path=output_path
        self.seed=int(seed)
        if fixed is None: fixed=dict()
        self.fixed=fixed
        if len(self.values) == 0: raise ConfigError("the sweep has no values.")
        if not np.all(np.isfinite(self.values)): raise ConfigError("sweep values must be finite.")

class RunRecord(object):
    """
    One row of a sweep: the full inputs, the outputs, status 'ok' or 'error', the error kind
    and the wall time in seconds.
    """
    def __init__(self,inputs,outputs=None,status='ok',error_kind=None,wall_time=0.0):
        self.inputs=inputs
        if outputs is None: outputs=dict()
        self.outputs=outputs
        self.status=status
        self.error_kind=error_kind
        self.wall_time=float(wall_time)

    def to_row(self,timing=False):
        row=dict(self.inputs)
        row.update(self.outputs)
        row["status"]=self.status
        row["error_kind"]=self.error_kind if self.error_kind is not None else ''
        if timing: row["wall_time"]=self.wall_time
        return row
