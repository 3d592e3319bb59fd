#FluxGo helper functions.
#

"""
This module lists the option names accepted across FluxGo, so wrappers and the
command line check their inputs against one place.
"""

def segment_forms():
    """
    Returns the available segment forms of a generating function.
    """
    o=["affine","moebius","reciprocal","logslope","mollified","numeric"]

    return o

def constructors():
    """
    Returns the generator constructors that a JSON document may name.
    """
    o=["identity","moebius","shock","f_eta","logslope"]

    return o

def verify_suites():
    """
    Returns the available verification suites.

    modes: mirror boundary, packet Gram matrices, one-point function.
    conformal: Moebius equivalence of two- and four-point functions.
    oracle: point splitting against the Schwarzian flux.
    shock: kink weights, admissibility, positivity and mollifier convergence.
    minimizer: closed-form minimum, consistency and the direct-search oracle.
    chain: the switching-bound derivation.
    """
    o=["modes","conformal","oracle","shock","minimizer","chain"]

    return o

def sweep_commands(command=None):
    """
    Sub-commands a sweep can repeat, with the parameters each accepts.
    """
    o={"bound":["t_s","polarizations","hbar"],
       "chain":["E_n"],
       "minimize":["E_n","L"],
       "flux-total":["E_n"]}

    if command is None: return o
    return o[command]

def output_formats():
    """
    Returns the report formats of the command line.
    """
    o=["csv","json"]

    return o
