"""lexecon: affect word-list analytics, news sentiment indices, and a
mixed vector error correction engine for measuring sentiment shocks.

The pipeline stages map onto submodules:

* :mod:`lexecon.lexicon` -- word-lists and word-rating tables
* :mod:`lexecon.resampling` -- Monte-Carlo randomization tests and
  valence-matched resampling
* :mod:`lexecon.extrapolation` -- embedding-to-semantic-feature regressors
* :mod:`lexecon.structure` -- correlations, PCA and k-means list splitting
* :mod:`lexecon.sentiment` -- article scoring and monthly index building
* :mod:`lexecon.econometrics` -- ADF/Johansen/VECM, impulse responses,
  variance decompositions and bootstrap bands
* :mod:`lexecon.cli` -- the ``lexecon`` command line front end
"""

__version__ = "0.1.0"
