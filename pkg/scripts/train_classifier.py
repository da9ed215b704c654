"""Train the bundled digit classifier and store its weights in the package data folder."""
import argparse
import logging
import os

import acsim
from acsim.objectives import HOLDOUT_SEED
from acsim.objectives import WEIGHTS_FILE
from acsim.objectives import classifier_accuracy
from acsim.objectives import make_digit_corpus
from acsim.objectives import save_classifier
from acsim.objectives import train_classifier


logger = logging.getLogger('train_classifier')

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument('--out', default=acsim.get(WEIGHTS_FILE), help='weights file')
parser.add_argument('--force', action='store_true', help='retrain even if the weights file exists')
parser.add_argument('--epochs', type=int, default=20)
args = parser.parse_args()

logging.basicConfig(level=logging.INFO, format='%(levelname)s %(name)s: %(message)s')

if os.path.exists(args.out) and not args.force:
    logger.info('%s exists, pass --force to retrain', args.out)
else:
    clf = train_classifier(epochs=args.epochs)
    images, labels = make_digit_corpus(1000, HOLDOUT_SEED)
    accuracy = classifier_accuracy(clf, images, labels)
    logger.info('held-out accuracy %.4f', accuracy)
    if accuracy < 0.95:
        logger.warning('accuracy below 0.95, the attack experiments expect a stronger classifier')
    save_classifier(clf, args.out)
    logger.info('weights written to %s', args.out)
