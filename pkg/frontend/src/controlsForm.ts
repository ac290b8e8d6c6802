import type { SessionStore } from './state';
import type { CategoryCode, ControlsForm, PlatformCode } from './types';

interface NumberField {
  name: keyof ControlsForm;
  label: string;
  min: number;
}

const NUMBER_FIELDS: NumberField[] = [
  { name: 'goal', label: 'Funding goal', min: 1 },
  { name: 'characters', label: 'Description length (characters)', min: 1 },
  { name: 'figures', label: 'Figures', min: 0 },
  { name: 'tables', label: 'Tables', min: 0 },
  { name: 'videos', label: 'Videos', min: 0 },
  { name: 'rewards', label: 'Reward tiers', min: 0 },
];

const FLAG_FIELDS: Array<{ name: keyof ControlsForm; label: string }> = [
  { name: 'team_intro', label: 'Team introduction on page' },
  { name: 'timeline', label: 'Timeline on page' },
];

/**
 * Campaign-page details: platform, category, and the eight control
 * variables. Invalid values show a field-level message and suppress the
 * server request until fixed.
 */
export function renderControlsForm(root: HTMLElement, store: SessionStore): void {
  const form = document.createElement('form');
  form.className = 'controls-form';
  form.addEventListener('submit', (event) => event.preventDefault());

  const platformSelect = document.createElement('select');
  platformSelect.name = 'platform';
  for (const code of ['KS', 'IGG'] as PlatformCode[]) {
    const option = document.createElement('option');
    option.value = code;
    option.textContent = code === 'KS' ? 'Kickstarter' : 'Indiegogo';
    platformSelect.appendChild(option);
  }
  const categorySelect = document.createElement('select');
  categorySelect.name = 'category';
  for (const code of ['3DP', 'SW'] as CategoryCode[]) {
    const option = document.createElement('option');
    option.value = code;
    option.textContent = code === '3DP' ? '3D printer' : 'Smart watch';
    categorySelect.appendChild(option);
  }
  const onGroupChange = () => {
    void store.setGroup(
      platformSelect.value as PlatformCode,
      categorySelect.value as CategoryCode,
    );
  };
  platformSelect.addEventListener('change', onGroupChange);
  categorySelect.addEventListener('change', onGroupChange);

  const groupRow = document.createElement('div');
  groupRow.className = 'control-field';
  groupRow.appendChild(platformSelect);
  groupRow.appendChild(categorySelect);
  form.appendChild(groupRow);

  const errorSpans = new Map<string, HTMLElement>();

  for (const field of NUMBER_FIELDS) {
    const row = document.createElement('div');
    row.className = 'control-field';
    const label = document.createElement('label');
    label.textContent = field.label;
    const input = document.createElement('input');
    input.type = 'number';
    input.name = field.name;
    input.min = String(field.min);
    input.value = String(store.get().controls[field.name]);
    input.addEventListener('input', () => {
      const raw = input.value.trim();
      const value = raw === '' ? Number.NaN : Number(raw);
      void store.setControl(field.name, value as never);
    });
    const error = document.createElement('span');
    error.className = 'field-error';
    error.dataset.for = field.name;
    errorSpans.set(field.name, error);
    label.appendChild(input);
    row.appendChild(label);
    row.appendChild(error);
    form.appendChild(row);
  }

  for (const field of FLAG_FIELDS) {
    const row = document.createElement('div');
    row.className = 'control-field';
    const label = document.createElement('label');
    const input = document.createElement('input');
    input.type = 'checkbox';
    input.name = field.name;
    input.checked = Boolean(store.get().controls[field.name]);
    input.addEventListener('change', () => {
      void store.setControl(field.name, input.checked as never);
    });
    label.appendChild(input);
    label.appendChild(document.createTextNode(` ${field.label}`));
    row.appendChild(label);
    form.appendChild(row);
  }

  root.appendChild(form);

  function sync(): void {
    const state = store.get();
    for (const [name, span] of errorSpans) {
      const message = state.controlErrors[name as keyof ControlsForm];
      span.textContent = message ?? '';
      span.classList.toggle('visible', message !== undefined);
    }
  }

  sync();
  store.subscribe(sync);
}
