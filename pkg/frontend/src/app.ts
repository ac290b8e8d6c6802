import { SessionStore } from './state';
import { renderControlsForm } from './controlsForm';
import { renderWizard } from './wizard';
import { renderWhatifPanel } from './whatifPanel';
import type { PredictionApi } from './state';
import type { ModelSummary, RubricDocument } from './types';

/**
 * Composition root: model picker, live amount display with optional
 * interval band, offline banner, controls form, wizard, what-if panel.
 * Displayed numbers are the server's values verbatim.
 */
export function createApp(
  root: HTMLElement,
  api: PredictionApi,
  rubric: RubricDocument,
  models: ModelSummary[],
): SessionStore {
  const questionIds = rubric.questions.map((q) => q.id);
  const store = new SessionStore(api, questionIds, {
    modelId: models[0]?.id ?? 'paper-baseline',
  });

  const banner = document.createElement('div');
  banner.className = 'offline-banner';
  banner.textContent = 'Prediction service unreachable; values may be stale.';

  const header = document.createElement('header');
  header.className = 'app-header';

  const modelSelect = document.createElement('select');
  modelSelect.className = 'model-select';
  for (const model of models) {
    const option = document.createElement('option');
    option.value = model.id;
    option.textContent = model.supports_intervals
      ? `${model.name} (with 90% band)`
      : model.name;
    modelSelect.appendChild(option);
  }
  modelSelect.addEventListener('change', () => {
    void store.setModel(modelSelect.value);
  });

  const amount = document.createElement('p');
  amount.className = 'amount-display';
  const amountValue = document.createElement('span');
  amountValue.className = 'amount-value';
  const lnValue = document.createElement('span');
  lnValue.className = 'ln-value';
  const band = document.createElement('span');
  band.className = 'interval-band';
  amount.appendChild(amountValue);
  amount.appendChild(lnValue);
  amount.appendChild(band);

  const serverError = document.createElement('p');
  serverError.className = 'server-error';

  header.appendChild(modelSelect);
  header.appendChild(amount);
  header.appendChild(serverError);

  root.appendChild(banner);
  root.appendChild(header);

  const columns = document.createElement('main');
  columns.className = 'app-columns';
  const left = document.createElement('div');
  const middle = document.createElement('div');
  const right = document.createElement('div');
  columns.appendChild(left);
  columns.appendChild(middle);
  columns.appendChild(right);
  root.appendChild(columns);

  renderControlsForm(left, store);
  renderWizard(middle, store, rubric);
  renderWhatifPanel(right, store);

  function sync(): void {
    const state = store.get();
    banner.classList.toggle('visible', state.offline);
    serverError.textContent = state.serverError ?? '';

    if (state.prediction === null) {
      amountValue.textContent = 'no prediction yet';
      lnValue.textContent = '';
      band.textContent = '';
      return;
    }
    amountValue.textContent = String(state.prediction.amount);
    lnValue.textContent = `ln ${String(state.prediction.ln_amount)}`;
    const interval = state.prediction.interval;
    band.textContent = interval
      ? `${String(interval.level)} band [${String(interval.lower)}, ${String(interval.upper)}]`
      : '';
  }

  sync();
  store.subscribe(sync);
  void store.refresh();
  return store;
}
