from .structures import Verdict, DecisionOutcome, SampleGrid, SequenceSpec
