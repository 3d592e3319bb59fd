import sys,time,os,glob
import numpy as np
import pandas as pd
from mpi4py import MPI
from fluxgo import genfun,modes
from fluxgo.types import SplitParams
if not sys.warnoptions:
    import warnings
    warnings.simplefilter("ignore")
'''
Point-splitting oracle script of FluxGo to:
    1) load a serialized generating function (JSON, as written by genfun.save);
    2) split the evaluation points over the MPI ranks;
    3) compare the point-split flux with the Schwarzian flux at every point;
    4) merge the per-rank tables into one CSV ordered by x.

The points of a rank are independent, so the merged table does not depend on the number of ranks.
'''
tt0=time.time()
########################################
#########PARAMETER SECTION##############
########################################
# absolute path parameters
rootpath  = 'oracle_run'                                         # root path for this run
config    = os.path.join(rootpath,'generator.json')               # serialized generating function
PARTDIR   = os.path.join(rootpath,'PARTS')                        # dir for the per-rank tables
outfile   = os.path.join(rootpath,'oracle_report.csv')            # merged table

# evaluation grid; points that hit a kink are moved by a small offset
xmin,xmax,npts = -1.0,2.0,61
kink_offset  = 1e-6

# point-splitting para
split_offsets = (1e-2,5e-3,2.5e-3)                                # offsets of the point pair, relative to the scale of f
cutoff_levels = 5                                                 # cutoff values in the inner extrapolation
hbar          = None                                              # None uses the hbar of the generator
flag          = True                                              # print progress

oracle_para={'config':config,'xmin':xmin,'xmax':xmax,'npts':npts,'split_offsets':split_offsets,
             'cutoff_levels':cutoff_levels,'hbar':hbar}
#######################################
###########PROCESSING SECTION##########
#######################################
#--------MPI---------
comm = MPI.COMM_WORLD
rank = comm.Get_rank()
size = comm.Get_size()

if rank == 0:
    if not os.path.isdir(PARTDIR):os.makedirs(PARTDIR)
    fout = open(os.path.join(rootpath,'oracle_para.txt'),'w');fout.write(str(oracle_para));fout.close()
    for f in glob.glob(os.path.join(PARTDIR,'part_*.csv')): os.remove(f)

    f  = genfun.load(config)
    xs = np.linspace(xmin,xmax,npts)
    for k in f.kinks:
        xs[np.abs(xs-k) < kink_offset] += kink_offset
    splits = len(xs)
    if splits==0:
        raise IOError('Abort! no evaluation points')
else:
    splits,xs = [None for _ in range(2)]

# broadcast the variables
splits = comm.bcast(splits,root=0)
xs     = comm.bcast(xs,root=0)
f  = genfun.load(config)
sp = SplitParams(split_offsets=split_offsets,cutoff_levels=cutoff_levels)

# MPI loop: one point at a time, every size-th point on this rank
parts=[]
for ix in range(rank,splits,size):
    if flag:print('rank %d: x=%.6g'%(rank,xs[ix]))
    parts.append(modes.oracle_report(f,[xs[ix]],sp,hbar))
if len(parts) > 0:
    pd.concat(parts).to_csv(os.path.join(PARTDIR,'part_%04d.csv'%(rank)),index=False,float_format='%.17g')

tt1 = time.time()
print('it takes %6.2fs to evaluate the oracle on rank %d' % (tt1-tt0,rank))
comm.barrier()

# merge all parts and output
if rank == 0:
    files = sorted(glob.glob(os.path.join(PARTDIR,'part_*.csv')))
    df = pd.concat([pd.read_csv(f) for f in files]).sort_values('x',kind='mergesort')
    df.to_csv(outfile,index=False,float_format='%.17g')
    print('worst relative error %.3e over %d points'%(df['rel_err'].max(),len(df)))
    sys.exit()
