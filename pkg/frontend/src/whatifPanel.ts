import type { SessionStore } from './state';

/**
 * Ranked one-step factor raises, straight from the server's what-if
 * response. Locked until the wizard is finished; factors already at Full
 * render disabled. Clicking a raise applies it to the session and
 * re-predicts.
 */
export function renderWhatifPanel(root: HTMLElement, store: SessionStore): void {
  const panel = document.createElement('section');
  panel.className = 'whatif-panel';
  const title = document.createElement('h3');
  title.textContent = 'What-if: next rating raises';
  const body = document.createElement('div');
  body.className = 'whatif-body';
  panel.appendChild(title);
  panel.appendChild(body);
  root.appendChild(panel);

  function sync(): void {
    const state = store.get();
    body.innerHTML = '';

    if (!state.finished) {
      const note = document.createElement('p');
      note.className = 'whatif-locked';
      note.textContent =
        'Answer all 26 questions and press finish to unlock the what-if analysis.';
      body.appendChild(note);
      return;
    }
    if (state.whatif === null) {
      const note = document.createElement('p');
      note.className = 'whatif-pending';
      note.textContent = 'Waiting for the first prediction.';
      body.appendChild(note);
      return;
    }

    const entries = state.whatif.improvements;
    if (!entries.some((entry) => entry.headroom)) {
      const note = document.createElement('p');
      note.className = 'whatif-empty';
      note.textContent =
        'Every factor is already rated Full; no single-step raise can move the prediction.';
      body.appendChild(note);
      return;
    }

    const list = document.createElement('ol');
    list.className = 'whatif-list';
    for (const entry of entries) {
      const item = document.createElement('li');
      item.dataset.factor = entry.factor;
      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'raise-button';
      button.disabled = !entry.headroom;
      button.textContent = entry.headroom
        ? `${entry.factor}: ${entry.current} to ${entry.next}`
        : `${entry.factor}: already Full`;
      button.addEventListener('click', () => {
        void store.applyRaise(entry.factor);
      });

      const delta = document.createElement('span');
      delta.className = 'raise-delta';
      delta.textContent = `delta ${String(entry.delta)}`;
      const projected = document.createElement('span');
      projected.className = 'raise-projected';
      projected.textContent = `projected ln ${String(entry.projected_ln_amount)}`;

      item.appendChild(button);
      item.appendChild(delta);
      item.appendChild(projected);
      list.appendChild(item);
    }
    body.appendChild(list);
  }

  sync();
  store.subscribe(sync);
}
